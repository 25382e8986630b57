//! Built-in verification battery: quick, self-contained checks of every
//! layer of the engine, mirroring the library's heavier test suites at a
//! size that finishes in seconds.

use num_bigint::BigInt;
use num_traits::Zero;

use gedlab::chowring::{taut_chern, ChowClass, ProductCtx, TautBundle};
use gedlab::combinat::{faulhaber, lr_coefficient, Partition, PowerSumExpr};
use gedlab::ged::{ged_det, SupportSpec};
use gedlab::localization::{ged_det_localized, WeightSpec};
use gedlab::Rat;

pub fn run() -> Vec<(String, bool)> {
    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool| checks.push((name.to_string(), ok));

    push("faulhaber matches brute force (p <= 6, n <= 60)", {
        (0..=6u32).all(|p| {
            let f = faulhaber(p);
            (0..=60u64).all(|n| {
                let brute: BigInt = (1..=n).map(|k| BigInt::from(k).pow(p)).sum();
                f.eval_int(n).map(|v| v == brute).unwrap_or(false)
            })
        })
    });

    push("double symmetric sum matches subset enumeration", {
        let expr = PowerSumExpr::new(3)
            .with_term(
                Partition::new(vec![2]).unwrap(),
                Partition::new(vec![1]).unwrap(),
                Rat::from_integer(1.into()),
            )
            .unwrap();
        let mut ok = true;
        for n in 2..=5u64 {
            for m in 2..=5u64 {
                let closed = expr.double_symmetric_sum(2, n, m).unwrap();
                let mut brute = Rat::zero();
                for a1 in 1..=n {
                    for a2 in a1 + 1..=n {
                        for b1 in 1..=m {
                            for b2 in b1 + 1..=m {
                                let p2 = BigInt::from(a1 * a1 + a2 * a2);
                                let p1 = BigInt::from(b1 + b2);
                                brute += Rat::from_integer(p2 * p1);
                            }
                        }
                    }
                }
                ok &= closed == brute;
            }
        }
        ok
    });

    push("littlewood-richardson pieri values", {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])) == BigInt::from(1)
            && lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])) == BigInt::from(1)
            && lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[3, 2])) == BigInt::from(0)
            && lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])) == BigInt::from(2)
    });

    push("whitney duality on small products", {
        let mut ok = true;
        for (n, m, k) in [(2u32, 2u32, 1u32), (3, 2, 1), (4, 3, 2), (3, 3, 3)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            let u = taut_chern(ctx, TautBundle::SourceSub);
            let q = taut_chern(ctx, TautBundle::SourceQuot);
            ok &= u.total_chern().multiply(q.total_chern()) == ChowClass::one(ctx);
            let u = taut_chern(ctx, TautBundle::TargetSub);
            let q = taut_chern(ctx, TautBundle::TargetQuot);
            ok &= u.total_chern().multiply(q.total_chern()) == ChowClass::one(ctx);
        }
        ok
    });

    push("quadric surface gED = 6 on both paths", {
        let s = ged_det(2, 2, 1).map(|r| r.ged.clone());
        let l = ged_det_localized(2, 2, 1, &WeightSpec::standard(2, 2)).map(|r| r.ged);
        matches!((s, l), (Ok(a), Ok(b)) if a == BigInt::from(6) && b == BigInt::from(6))
    });

    push("P^2 x P^1 gED = 10 on both paths", {
        let s = ged_det(3, 2, 1).map(|r| r.ged.clone());
        let l = ged_det_localized(3, 2, 1, &WeightSpec::standard(3, 2)).map(|r| r.ged);
        matches!((s, l), (Ok(a), Ok(b)) if a == BigInt::from(10) && b == BigInt::from(10))
    });

    push("full-space collapse gED = 1 (N, m <= 4)", {
        let mut ok = true;
        for n in 1..=4u64 {
            for m in 1..=4u64 {
                ok &= ged_det(n, m, n.min(m))
                    .map(|r| r.ged == BigInt::from(1))
                    .unwrap_or(false);
            }
        }
        ok
    });

    push(
        "dual-path agreement (N <= 5, m <= 4, k <= 2, two weight specs)",
        {
            let mut ok = true;
            for n in 1..=5u64 {
                for m in 1..=4u64 {
                    for k in 1..=n.min(m).min(2) {
                        let s = match ged_det(n, m, k) {
                            Ok(r) => r,
                            Err(_) => {
                                ok = false;
                                continue;
                            }
                        };
                        for ws in [
                            WeightSpec::standard(n as u32, m as u32),
                            WeightSpec::randomized(n as u32, m as u32, 0xC0FFEE),
                        ] {
                            ok &= ged_det_localized(n, m, k, &ws)
                                .map(|l| s.same_core(&l))
                                .unwrap_or(false);
                        }
                    }
                }
            }
            ok
        },
    );

    push("support invariance through N_S", {
        let s1 = SupportSpec::new([1]).unwrap();
        let s12 = SupportSpec::new([1, 2]).unwrap();
        let a = gedlab::ged::ged_neuro(2, 2, &s12, 1); // N_S = 5
        let b = gedlab::ged::ged_neuro(5, 2, &s1, 1); // N_S = 5
        matches!((a, b), (Ok(x), Ok(y)) if x.same_core(&y))
    });

    checks
}
