//! The main pipeline: from `(N, m, k)` — or `(n, m, S, k)` — build the Nash
//! bundle `E = (Q^v⊗U_k) ⊕ (Q^v⊗Q_W) ⊕ (U^v⊗U_k)` on the Grassmannian base,
//! evaluate the fundamental integrals
//!
//! `I_a = ∫_B c_a(E) · s_{dimB - a}(Q^v ⊗ U_k)`,
//!
//! and assemble the Chern-Mather degree vector and the generic ED degree.
//!
//! The Nash blow-up is the projective bundle `Z = P(Q^v⊗U_k)` and the Nash
//! tangent bundle (the rank-d extension of the tangent bundle of the smooth
//! locus) is `(E / O_Z(-1)) ⊗ O_Z(1)`. Pushing `c_{d-j}(·) ξ^j` down to the
//! base with `p_*(ξ^{k²-1+t}) = s_t` collapses, after a hockey-stick
//! summation, to the closed form
//!
//! `A_j = deg(c_j^Ma(X) · H^j) = sum_{a=0}^{d-j} C(d-a+1, j+1) · I_a`,
//!
//! and Aluffi's formula turns the `A_j` into the gED. The same `I_a` are what
//! the localization path evaluates independently, so exact agreement of the
//! two paths checks every link of this chain. An explicit ξ-expansion route
//! (`chern_mather_degrees_xi_route`) cross-checks the closed form.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{Signed, Zero};

use crate::bundle::BundleClass;
use crate::chowring::{taut_chern, ChowClass, ProductCtx, TautBundle};
use crate::combinat::{binomial, binomial_u};
use crate::{rat_to_int, GedError, Int, Rat};

/// Support of the activation polynomial: the set of exponents with nonzero
/// coefficient. Everything downstream depends on it only through
/// `N_S(n) = sum_{s in S} C(n+s-1, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSpec {
    elements: BTreeSet<u32>,
}

impl SupportSpec {
    pub fn new(elements: impl IntoIterator<Item = u32>) -> Result<Self, GedError> {
        let elements: BTreeSet<u32> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(GedError::invalid("support must be nonempty"));
        }
        Ok(SupportSpec { elements })
    }

    /// Monomial support `{r}`.
    pub fn monomial(r: u32) -> Self {
        SupportSpec {
            elements: [r].into_iter().collect(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.elements.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elements.iter().copied().collect()
    }

    /// Activation degree `deg S = max S`.
    pub fn degree(&self) -> u32 {
        *self.elements.iter().max().unwrap()
    }

    /// `N_S(n) = dim V_S = sum_{s in S} C(n+s-1, s)` for input dimension `n`.
    pub fn dim_v(&self, n: u64) -> Int {
        self.elements
            .iter()
            .map(|&s| binomial_u(n + s as u64 - if s > 0 { 1 } else { 0 }, s as u64))
            .sum()
    }
}

/// Chern-Mather degree vector and gED of one determinantal variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GedResult {
    /// dimension of the source space (`N`, i.e. `N_S` for neuro inputs)
    pub rows: u64,
    /// dimension of the target space (`m`)
    pub cols: u64,
    /// rank bound / width
    pub rank: u64,
    /// `d = dim X = k(N+m-k) - 1`
    pub dimension: u64,
    /// `A_j = deg(c_j^Ma(X) · H^j)` for `j = 0..=d`
    pub cm_degrees: Vec<Int>,
    /// generic Euclidean distance degree
    pub ged: Int,
    /// degree of the variety, `= A_d`
    pub degree: Int,
    /// present when the result was reached through a neuro layer
    pub neuro: Option<NeuroMeta>,
}

/// How a neural-layer query resolved to matrix dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeuroMeta {
    pub input_dim: u64,
    pub support: Vec<u32>,
}

impl GedResult {
    /// Equality of the mathematical core, ignoring neuro provenance.
    pub fn same_core(&self, other: &GedResult) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.rank == other.rank
            && self.dimension == other.dimension
            && self.cm_degrees == other.cm_degrees
            && self.ged == other.ged
            && self.degree == other.degree
    }
}

/// `dim X = k(N+m-k) - 1`, with the usual rank bound checks.
pub fn variety_dimension(n: u64, m: u64, k: u64) -> Result<u64, GedError> {
    if n == 0 || m == 0 {
        return Err(GedError::invalid("dimensions must be positive"));
    }
    if k == 0 || k > n.min(m) {
        return Err(GedError::invalid(format!(
            "rank {k} must satisfy 1 <= k <= min({n}, {m})"
        )));
    }
    Ok(k * (n + m - k) - 1)
}

/// The Nash bundle `E = (Q^v⊗U_k) ⊕ (Q^v⊗Q_W) ⊕ (U^v⊗U_k)`, rank `d+1`.
/// Its fibers over the regular locus are the affine tangent spaces of `X`.
pub fn nash_bundle(ctx: &ProductCtx) -> Result<BundleClass, GedError> {
    let q_dual = taut_chern(*ctx, TautBundle::SourceQuot).dual();
    let u_dual = taut_chern(*ctx, TautBundle::SourceSub).dual();
    let u_k = taut_chern(*ctx, TautBundle::TargetSub);
    let q_w = taut_chern(*ctx, TautBundle::TargetQuot);
    let e = q_dual
        .tensor(&u_k)?
        .direct_sum(&q_dual.tensor(&q_w)?)
        .direct_sum(&u_dual.tensor(&u_k)?);
    let d = variety_dimension(ctx.n as u64, ctx.m as u64, ctx.k as u64)?;
    if e.rank() as u64 != d + 1 {
        return Err(GedError::Inconsistency(format!(
            "Nash bundle rank {} != d+1 = {}",
            e.rank(),
            d + 1
        )));
    }
    Ok(e)
}

/// The fundamental Grassmannian integrals
/// `I_a = ∫_B c_a(E) · s_{dimB - a}(Q^v⊗U_k)`, `a = 0..=dim B`,
/// evaluated in the Schubert basis via the Poincare pairing.
pub fn base_integrals(ctx: &ProductCtx) -> Result<Vec<Int>, GedError> {
    let e = nash_bundle(ctx)?;
    let fiber = taut_chern(*ctx, TautBundle::SourceQuot)
        .dual()
        .tensor(&taut_chern(*ctx, TautBundle::TargetSub))?;
    let segre = fiber.total_segre();
    let dim_b = ctx.dim_b();
    let mut out = Vec::with_capacity(dim_b as usize + 1);
    for a in 0..=dim_b {
        let ca = e.chern(a);
        let val = ca.pair_integral(&segre[(dim_b - a) as usize]);
        out.push(rat_to_int(&val, &format!("base integral I_{a}"))?);
    }
    Ok(out)
}

/// Chern-Mather degrees from the fundamental integrals:
/// `A_j = sum_{a} C(d-a+1, j+1) I_a`.
pub fn mather_from_base(d: u64, integrals: &[Int]) -> Vec<Int> {
    (0..=d)
        .map(|j| {
            let mut acc = Int::zero();
            for (a, i_a) in integrals.iter().enumerate() {
                let a = a as u64;
                if a > d - j {
                    break;
                }
                acc += binomial((d - a + 1) as i64, (j + 1) as i64) * i_a;
            }
            acc
        })
        .collect()
}

/// Aluffi's alternating sum `gED = sum_j (-1)^{d+j} (2^{j+1}-1) A_j`.
pub fn aluffi_ged(cm_degrees: &[Int]) -> Int {
    let d = cm_degrees.len() - 1;
    let mut acc = Int::zero();
    for (j, a_j) in cm_degrees.iter().enumerate() {
        let weight = (Int::from(2).pow(j as u32 + 1) - 1) * a_j;
        if (d + j) % 2 == 1 {
            acc -= weight;
        } else {
            acc += weight;
        }
    }
    acc
}

/// The degree vector `A_j = deg(c_j^Ma(X) · H^j)`, `j = 0..=d`, with the
/// nonnegativity guard (a negative entry would be a bug, not a discovery).
pub fn chern_mather_degrees(ctx: &ProductCtx) -> Result<Vec<Int>, GedError> {
    let d = variety_dimension(ctx.n as u64, ctx.m as u64, ctx.k as u64)?;
    let integrals = base_integrals(ctx)?;
    let cm = mather_from_base(d, &integrals);
    for (j, a_j) in cm.iter().enumerate() {
        if a_j.is_negative() {
            return Err(GedError::Inconsistency(format!(
                "negative Chern-Mather degree A_{j} = {a_j} at ctx {ctx:?}"
            )));
        }
    }
    Ok(cm)
}

/// Alternative bookkeeping route for the same degrees: expand the Chern
/// class of the twisted Nash tangent bundle explicitly as a polynomial in
/// `ξ = c_1(O_Z(1))` with Chow-class coefficients, multiply by `ξ^j`, and
/// push every `ξ^e` down with `p_*(ξ^{k²-1+t}) = s_t`. Slower but with no
/// closed-form summation; used as an internal cross-check.
pub fn chern_mather_degrees_xi_route(ctx: &ProductCtx) -> Result<Vec<Int>, GedError> {
    let d = variety_dimension(ctx.n as u64, ctx.m as u64, ctx.k as u64)? as usize;
    let dim_z = ctx.dim_z() as usize;
    let e = nash_bundle(ctx)?;
    let fiber = taut_chern(*ctx, TautBundle::SourceQuot)
        .dual()
        .tensor(&taut_chern(*ctx, TautBundle::TargetSub))?;
    let segre = fiber.total_segre();
    let k2m1 = (ctx.k * ctx.k - 1) as usize;

    // xi[e] = Chow coefficient of ξ^e in c(T̃), mixed grades allowed.
    // c(T̃) = sum_i c_i(cal T) (1+ξ)^{d-i}, c_i(cal T) = sum_s c_{i-s}(E) ξ^s.
    let mut xi: Vec<ChowClass> = vec![ChowClass::zero(*ctx); dim_z + 1];
    for i in 0..=d {
        for s in 0..=i {
            let base = e.chern((i - s) as u32);
            if base.is_zero() {
                continue;
            }
            for b in 0..=(d - i) {
                let ep = s + b;
                if ep > dim_z {
                    continue;
                }
                let coeff = Rat::from_integer(binomial((d - i) as i64, b as i64));
                xi[ep] = xi[ep].add(&base.scale(&coeff));
            }
        }
    }
    let mut out = Vec::with_capacity(d + 1);
    for j in 0..=d {
        // grade-(d-j) component, times ξ^j, pushed forward and integrated
        let mut total = Rat::zero();
        for (ep, cls) in xi.iter().enumerate() {
            if ep + j > dim_z || (d as i64 - j as i64 - ep as i64) < 0 {
                continue;
            }
            let part = cls.graded_component((d - j - ep) as u32);
            if part.is_zero() {
                continue;
            }
            let t = (ep + j) as i64 - k2m1 as i64;
            if t < 0 || t as u32 > ctx.dim_b() {
                continue;
            }
            total += part.pair_integral(&segre[t as usize]);
        }
        out.push(rat_to_int(&total, &format!("xi-route A_{j}"))?);
    }
    Ok(out)
}

type ResultCache = RwLock<HashMap<(u64, u64, u64), Arc<GedResult>>>;

fn cache() -> &'static ResultCache {
    static C: OnceLock<ResultCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Assembles a `GedResult` from a Chern-Mather vector.
pub fn result_from_mather(n: u64, m: u64, k: u64, cm: Vec<Int>) -> Result<GedResult, GedError> {
    let d = variety_dimension(n, m, k)?;
    let ged = aluffi_ged(&cm);
    if ged.is_negative() {
        return Err(GedError::Inconsistency(format!(
            "negative gED {ged} at ({n}, {m}, {k})"
        )));
    }
    let degree = cm[d as usize].clone();
    Ok(GedResult {
        rows: n,
        cols: m,
        rank: k,
        dimension: d,
        cm_degrees: cm,
        ged,
        degree,
        neuro: None,
    })
}

/// gED of the rank-`<= k` determinantal variety of `N x m` matrices,
/// via the Schubert path. Results are cached by `(N, m, k)`.
pub fn ged_det(n: u64, m: u64, k: u64) -> Result<Arc<GedResult>, GedError> {
    let key = (n, m, k);
    if let Some(hit) = cache().read().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let ctx = ProductCtx::new(
        u32::try_from(n).map_err(|_| GedError::invalid("N too large"))?,
        u32::try_from(m).map_err(|_| GedError::invalid("m too large"))?,
        u32::try_from(k).map_err(|_| GedError::invalid("k too large"))?,
    )?;
    let cm = chern_mather_degrees(&ctx)?;
    let result = Arc::new(result_from_mather(n, m, k, cm)?);
    // concurrent insertion of identical values is fine
    cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&result));
    Ok(result)
}

/// gED of the neurovariety for input dimension `n`, output dimension `m`,
/// activation support `S` and width `k`: resolves `N_S(n)` and delegates.
pub fn ged_neuro(n: u64, m: u64, support: &SupportSpec, k: u64) -> Result<GedResult, GedError> {
    if n == 0 {
        return Err(GedError::invalid("input dimension must be positive"));
    }
    let n_s = support.dim_v(n);
    let n_s_u64 = u64::try_from(&n_s)
        .map_err(|_| GedError::Budget(format!("resolved N_S = {n_s} is out of range")))?;
    let core = ged_det(n_s_u64, m, k)?;
    let mut result = (*core).clone();
    result.neuro = Some(NeuroMeta {
        input_dim: n,
        support: support.to_vec(),
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    /// Classical determinantal degree product formula — the independent
    /// oracle for `A_d`: `deg = prod_{i=0}^{N-k-1} (m+i)! i! / ((k+i)! (m-k+i)!)`.
    fn classical_degree(n: u64, m: u64, k: u64) -> Int {
        use crate::combinat::factorial;
        let mut acc = Rat::from_integer(1.into());
        for i in 0..n.saturating_sub(k) {
            acc *= Rat::new(
                factorial(m + i) * factorial(i),
                factorial(k + i) * factorial(m - k + i),
            );
        }
        rat_to_int(&acc, "classical degree").expect("integer degree")
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(variety_dimension(2, 2, 1).unwrap(), 2);
        assert_eq!(variety_dimension(3, 2, 1).unwrap(), 3);
        assert_eq!(variety_dimension(4, 4, 4).unwrap(), 15);
        assert!(variety_dimension(3, 2, 3).is_err());
        assert!(variety_dimension(0, 2, 1).is_err());
    }

    #[test]
    fn nash_bundle_ranks() {
        let ctx = ProductCtx::new(2, 2, 1).unwrap();
        assert_eq!(nash_bundle(&ctx).unwrap().rank(), 3);
        let ctx = ProductCtx::new(3, 3, 2).unwrap();
        assert_eq!(nash_bundle(&ctx).unwrap().rank(), 8);
        let ctx = ProductCtx::new(5, 3, 3).unwrap();
        let e = nash_bundle(&ctx).unwrap();
        assert_eq!(e.chern(0), ChowClass::one(ctx));
    }

    #[test]
    fn quadric_surface() {
        // frozen from the classical polar degrees (2,2,2): A = (4,4,2), gED 6
        let r = ged_det(2, 2, 1).unwrap();
        assert_eq!(r.cm_degrees, ints(&[4, 4, 2]));
        assert_eq!(r.ged, Int::from(6));
        assert_eq!(r.degree, Int::from(2));
        assert_eq!(r.dimension, 2);
    }

    #[test]
    fn segre_p2_x_p1() {
        // X = P^2 x P^1 in P^5: A = (6, 9, 8, 3), polar degrees (3,4,3,0),
        // gED 10 — frozen from the hand computation with c(TX)
        let r = ged_det(3, 2, 1).unwrap();
        assert_eq!(r.cm_degrees, ints(&[6, 9, 8, 3]));
        assert_eq!(r.ged, Int::from(10));
    }

    #[test]
    fn rank_one_family_against_tangent_oracle() {
        // Smooth Segre P^{N-1} x P^{m-1}: frozen gED values computed
        // independently from c(T(P^a x P^b)) and Aluffi's formula.
        for (n, m, want) in [
            (2u64, 2u64, 6i64),
            (3, 2, 10),
            (4, 2, 14),
            (5, 2, 18),
            (3, 3, 39),
            (4, 3, 83),
            (5, 3, 143),
            (6, 3, 219),
        ] {
            assert_eq!(
                ged_det(n, m, 1).unwrap().ged,
                Int::from(want),
                "({n},{m},1)"
            );
        }
    }

    #[test]
    fn full_space_collapse() {
        for n in 1..=6u64 {
            for m in 1..=6u64 {
                let k = n.min(m);
                let r = ged_det(n, m, k).unwrap();
                assert_eq!(r.ged, Int::from(1), "({n},{m},{k})");
                assert_eq!(r.degree, Int::from(1));
                // full projective space: A_j = C(Nm, Nm-1-j)
                let d = r.dimension;
                for (j, a_j) in r.cm_degrees.iter().enumerate() {
                    assert_eq!(
                        *a_j,
                        binomial((n * m) as i64, (d - j as u64) as i64),
                        "A_{j} of ({n},{m},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn degree_matches_classical_product_formula() {
        for n in 1..=7u64 {
            for m in 1..=7u64 {
                for k in 1..=n.min(m).min(3) {
                    let r = ged_det(n, m, k).unwrap();
                    assert_eq!(
                        r.degree,
                        classical_degree(n, m, k),
                        "degree of ({n},{m},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn projective_duality_symmetry() {
        // gED(X) = gED(X^*): the dual of rank <= k is rank <= min(N,m)-k
        for (n, m) in [(3u64, 3u64), (4, 3), (4, 4), (5, 4)] {
            let top = n.min(m);
            for k in 1..top {
                let a = ged_det(n, m, k).unwrap();
                let b = ged_det(n, m, top - k).unwrap();
                assert_eq!(a.ged, b.ged, "({n},{m}): k={k} vs {}", top - k);
            }
        }
    }

    #[test]
    fn xi_route_agrees_with_closed_form() {
        for (n, m, k) in [(2, 2, 1), (3, 2, 1), (3, 3, 2), (4, 3, 2), (4, 4, 2)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            assert_eq!(
                chern_mather_degrees(&ctx).unwrap(),
                chern_mather_degrees_xi_route(&ctx).unwrap(),
                "({n},{m},{k})"
            );
        }
    }

    #[test]
    fn mather_degrees_nonnegative_and_integral() {
        // degrees of effective classes cut by hyperplanes: every A_j >= 0
        // (the constructor would abort on a negative entry; this pins the
        // whole grid). Note the A_j below k^2 - 1 are genuinely nonzero in
        // general, e.g. A_0 = 18 for (3,3,2); only the fundamental
        // integrals ∫ c_{d-j}(E) s_{j-k²+1} are void below that index.
        for n in 2..=5u64 {
            for m in 2..=5u64 {
                for k in 1..=n.min(m) {
                    let r = ged_det(n, m, k).unwrap();
                    assert!(r.cm_degrees.iter().all(|a| !a.is_negative()));
                }
            }
        }
        assert_eq!(
            ged_det(3, 3, 2).unwrap().cm_degrees[0],
            Int::from(18),
            "regression: A_0 of the 3x3 determinant hypersurface"
        );
    }

    #[test]
    fn neuro_resolution_and_support_invariance() {
        let s1 = SupportSpec::new([1]).unwrap();
        let r = ged_neuro(2, 2, &s1, 1).unwrap();
        assert_eq!(r.rows, 2);
        assert_eq!(r.ged, Int::from(6));
        assert_eq!(
            r.neuro,
            Some(NeuroMeta {
                input_dim: 2,
                support: vec![1]
            })
        );

        // N_S = C(3,2) = 3 for S={2}, n=2: same as det(3,2,1)
        let s2 = SupportSpec::new([2]).unwrap();
        let r2 = ged_neuro(2, 2, &s2, 1).unwrap();
        assert!(r2.same_core(&ged_det(3, 2, 1).unwrap()));

        // engineered coincidence: S={1,2} at n=2 gives N_S = 2 + 3 = 5,
        // S={1} at n=5 gives 5
        let s12 = SupportSpec::new([1, 2]).unwrap();
        let a = ged_neuro(2, 2, &s12, 1).unwrap();
        let b = ged_neuro(5, 2, &s1, 1).unwrap();
        assert!(a.same_core(&b));
        assert_ne!(a.neuro, b.neuro);
    }

    #[test]
    fn support_dim_v() {
        let s = SupportSpec::new([1, 2]).unwrap();
        assert_eq!(s.dim_v(3), Int::from(9)); // 3 + 6
        assert_eq!(s.degree(), 2);
        let s0 = SupportSpec::new([0]).unwrap();
        assert_eq!(s0.dim_v(4), Int::from(1)); // Sym^0 = constants
        assert!(SupportSpec::new([]).is_err());
    }
}
