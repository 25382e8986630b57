//! Torus fixed-point localization on `B = Gr_{N-k}(C^N) x Gr_k(C^m)`:
//! the independent evaluation path for every Grassmannian integral.
//!
//! Fixed points are pairs of coordinate subspaces, indexed by subsets
//! `R ⊂ {1..N}` with `|R| = N-k` (the kernel plane) and `T ⊂ {1..m}` with
//! `|T| = k` (the image plane). At such a point every tautological bundle
//! splits into characters, so the integrand restricts to an elementary /
//! complete symmetric polynomial of integer weight differences, and the
//! equivariant Euler class of the tangent space is a product of weight
//! differences. Dividing and summing over all `C(N,k)·C(m,k)` points gives
//! the integral; the sum must come out an integer and is independent of the
//! chosen (pairwise-distinct) weights.
//!
//! Nothing here touches the Schubert machinery: only weight arithmetic.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chowring::ProductCtx;
use crate::combinat::binomial_u;
use crate::ged::{mather_from_base, result_from_mather, GedResult};
use crate::{rat_to_int, GedError, Int, Rat};

/// A torus fixed point of the base: the kernel plane spanned by the source
/// basis vectors indexed by `kernel` (1-based), the image plane by `image`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub kernel: Vec<u32>,
    pub image: Vec<u32>,
}

/// Integer torus weights: `u` on the source space, `w` on the target space,
/// each pairwise distinct so no Euler denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pub u: Vec<i64>,
    pub w: Vec<i64>,
}

impl WeightSpec {
    /// The default specialization `u_i = i`, `w_j = j`.
    pub fn standard(n: u32, m: u32) -> Self {
        WeightSpec {
            u: (1..=n as i64).collect(),
            w: (1..=m as i64).collect(),
        }
    }

    /// Seed-controlled distinct integer weights, for the invariance checks.
    pub fn randomized(n: u32, m: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = 4 * (n + m) as i64 + 8;
        let mut pool: Vec<i64> = (-span..=span).collect();
        pool.shuffle(&mut rng);
        let u = pool[..n as usize].to_vec();
        let mut pool2: Vec<i64> = (-span..=span).collect();
        pool2.shuffle(&mut rng);
        let w = pool2[..m as usize].to_vec();
        WeightSpec { u, w }
    }

    pub fn validate(&self, ctx: &ProductCtx) -> Result<(), GedError> {
        if self.u.len() != ctx.n as usize || self.w.len() != ctx.m as usize {
            return Err(GedError::invalid("weight spec has wrong lengths"));
        }
        let mut u = self.u.clone();
        u.sort_unstable();
        u.dedup();
        if u.len() != self.u.len() {
            return Err(GedError::invalid("source weights must be distinct"));
        }
        let mut w = self.w.clone();
        w.sort_unstable();
        w.dedup();
        if w.len() != self.w.len() {
            return Err(GedError::invalid("target weights must be distinct"));
        }
        Ok(())
    }
}

/// Number of fixed points, `C(N, k) · C(m, k)`.
pub fn count_fixed_points(ctx: &ProductCtx) -> Int {
    binomial_u(ctx.n as u64, ctx.k as u64) * binomial_u(ctx.m as u64, ctx.k as u64)
}

/// Lexicographic unranking of the `rank`-th `k`-subset of `{1..n}` (0-based
/// rank). Lets the fixed-point sweep be partitioned statically.
pub fn unrank_combination(n: u32, k: u32, mut rank: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut next = 1u32;
    let mut k_left = k;
    while k_left > 0 {
        let without: u64 = u64::try_from(&binomial_u((n - next) as u64, (k_left - 1) as u64))
            .expect("combination counts fit u64 at desk scale");
        if rank < without {
            out.push(next);
            k_left -= 1;
        } else {
            rank -= without;
        }
        next += 1;
    }
    out
}

/// The fixed point with the given 0-based index in the lexicographic
/// `(kernel, image)` ordering.
pub fn unrank_fixed_point(ctx: &ProductCtx, index: u64) -> FixedPoint {
    let m_count = u64::try_from(&binomial_u(ctx.m as u64, ctx.k as u64)).expect("desk scale");
    let kernel = unrank_combination(ctx.n, ctx.n - ctx.k, index / m_count);
    let image = unrank_combination(ctx.m, ctx.k, index % m_count);
    FixedPoint { kernel, image }
}

/// Equivariant Euler class of the tangent space at a fixed point:
/// `(prod_{i in R} prod_{a not in R} (u_a - u_i)) (prod_{b in T} prod_{c not in T} (w_c - w_b))`.
pub fn euler_class_at(pt: &FixedPoint, ws: &WeightSpec) -> Int {
    let mut acc = Int::one();
    let in_kernel = |i: u32| pt.kernel.contains(&i);
    let in_image = |j: u32| pt.image.contains(&j);
    for &i in &pt.kernel {
        for a in 1..=ws.u.len() as u32 {
            if !in_kernel(a) {
                acc *= Int::from(ws.u[(a - 1) as usize] - ws.u[(i - 1) as usize]);
            }
        }
    }
    for &b in &pt.image {
        for c in 1..=ws.w.len() as u32 {
            if !in_image(c) {
                acc *= Int::from(ws.w[(c - 1) as usize] - ws.w[(b - 1) as usize]);
            }
        }
    }
    acc
}

/// Equivariant Chern roots of the Nash bundle at a fixed point: the weights
/// of `{g : g(K) ⊆ I}` inside `Hom(V, W)`, namely `w_b - u_a` for every
/// column `a` outside the kernel (any row `b`) and `w_b - u_i` for kernel
/// columns `i` and image rows `b`.
fn nash_roots(pt: &FixedPoint, ws: &WeightSpec, ctx: &ProductCtx) -> Vec<Int> {
    let mut roots = Vec::with_capacity(ctx.dim_z() as usize + 1);
    let in_kernel = |i: u32| pt.kernel.contains(&i);
    for a in 1..=ctx.n {
        let ua = ws.u[(a - 1) as usize];
        if in_kernel(a) {
            for &b in &pt.image {
                roots.push(Int::from(ws.w[(b - 1) as usize] - ua));
            }
        } else {
            for b in 1..=ctx.m {
                roots.push(Int::from(ws.w[(b - 1) as usize] - ua));
            }
        }
    }
    roots
}

/// Negated Chern roots of the fiber bundle `Q^v ⊗ U_k` at a fixed point:
/// `u_a - w_b` for `a` outside the kernel, `b` in the image. Complete
/// homogeneous polynomials of these give the restricted Segre classes.
fn fiber_neg_roots(pt: &FixedPoint, ws: &WeightSpec, ctx: &ProductCtx) -> Vec<Int> {
    let mut out = Vec::with_capacity((ctx.k * ctx.k) as usize);
    let in_kernel = |i: u32| pt.kernel.contains(&i);
    for a in 1..=ctx.n {
        if in_kernel(a) {
            continue;
        }
        for &b in &pt.image {
            out.push(Int::from(ws.u[(a - 1) as usize] - ws.w[(b - 1) as usize]));
        }
    }
    out
}

/// Elementary symmetric polynomials `e_0..e_cap` by the product recurrence.
fn elementary_symmetric(values: &[Int], cap: usize) -> Vec<Int> {
    let mut e = vec![Int::zero(); cap + 1];
    e[0] = Int::one();
    let mut filled = 0usize;
    for x in values {
        filled = (filled + 1).min(cap);
        for t in (1..=filled).rev() {
            let add = &e[t - 1] * x;
            e[t] += add;
        }
    }
    e
}

/// Complete homogeneous symmetric polynomials `h_0..h_cap` via
/// `H(z) = prod 1/(1 - x z)`: per root, `h_new[t] = h_old[t] + x h_new[t-1]`.
fn complete_homogeneous(values: &[Int], cap: usize) -> Vec<Int> {
    let mut h = vec![Int::zero(); cap + 1];
    h[0] = Int::one();
    for x in values {
        for t in 1..=cap {
            let add = &h[t - 1] * x;
            h[t] += add;
        }
    }
    h
}

/// Restriction of the integrand `c_{d-j}(E) · s_{j-k²+1}(Q^v⊗U_k)` to one
/// fixed point: an elementary symmetric polynomial of the Nash roots times a
/// complete homogeneous one of the negated fiber roots.
pub fn restrict_integrand(
    j: u64,
    pt: &FixedPoint,
    ws: &WeightSpec,
    ctx: &ProductCtx,
) -> Result<Int, GedError> {
    let d = crate::ged::variety_dimension(ctx.n as u64, ctx.m as u64, ctx.k as u64)?;
    let k2m1 = (ctx.k as u64) * (ctx.k as u64) - 1;
    if j < k2m1 || j > d {
        return Err(GedError::invalid(format!(
            "index j={j} outside [k^2-1, d] = [{k2m1}, {d}]"
        )));
    }
    let e_idx = (d - j) as usize;
    let h_idx = (j - k2m1) as usize;
    let e = elementary_symmetric(&nash_roots(pt, ws, ctx), e_idx);
    let h = complete_homogeneous(&fiber_neg_roots(pt, ws, ctx), h_idx);
    Ok(&e[e_idx] * &h[h_idx])
}

/// One Grassmannian integral by localization:
/// `∫_B c_{d-j}(E) s_{j-k²+1}(Q^v⊗U_k) = sum_pt restriction / euler`,
/// asserted to be an integer.
pub fn integrate_localized(j: u64, ctx: &ProductCtx, ws: &WeightSpec) -> Result<Int, GedError> {
    ws.validate(ctx)?;
    let total = u64::try_from(&count_fixed_points(ctx))
        .map_err(|_| GedError::Budget("too many fixed points".into()))?;
    let sum = (0..total)
        .into_par_iter()
        .try_fold(Rat::zero, |acc, idx| {
            let pt = unrank_fixed_point(ctx, idx);
            let num = restrict_integrand(j, &pt, ws, ctx)?;
            let den = euler_class_at(&pt, ws);
            Ok::<Rat, GedError>(acc + Rat::new(num, den))
        })
        .try_reduce(Rat::zero, |a, b| Ok(a + b))?;
    rat_to_int(&sum, &format!("localized integral at j={j}"))
}

/// All fundamental integrals `I_a = ∫ c_a(E) s_{dimB-a}` in one sweep over
/// the fixed points, embarrassingly parallel with associative combination.
pub fn base_integrals_localized(ctx: &ProductCtx, ws: &WeightSpec) -> Result<Vec<Int>, GedError> {
    ws.validate(ctx)?;
    let dim_b = ctx.dim_b() as usize;
    let total = u64::try_from(&count_fixed_points(ctx))
        .map_err(|_| GedError::Budget("too many fixed points".into()))?;
    let zero = || vec![Rat::zero(); dim_b + 1];
    let sums = (0..total)
        .into_par_iter()
        .fold(zero, |mut acc, idx| {
            let pt = unrank_fixed_point(ctx, idx);
            let e = elementary_symmetric(&nash_roots(&pt, ws, ctx), dim_b);
            let h = complete_homogeneous(&fiber_neg_roots(&pt, ws, ctx), dim_b);
            let den = euler_class_at(&pt, ws);
            for (a, slot) in acc.iter_mut().enumerate() {
                let num = &e[a] * &h[dim_b - a];
                if !num.is_zero() {
                    *slot += Rat::new(num, den.clone());
                }
            }
            acc
        })
        .reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    sums.iter()
        .enumerate()
        .map(|(a, v)| rat_to_int(v, &format!("localized I_{a}")))
        .collect()
}

/// Full gED evaluation through the localization path alone.
pub fn ged_det_localized(n: u64, m: u64, k: u64, ws: &WeightSpec) -> Result<GedResult, GedError> {
    let ctx = ProductCtx::new(
        u32::try_from(n).map_err(|_| GedError::invalid("N too large"))?,
        u32::try_from(m).map_err(|_| GedError::invalid("m too large"))?,
        u32::try_from(k).map_err(|_| GedError::invalid("k too large"))?,
    )?;
    let integrals = base_integrals_localized(&ctx, ws)?;
    let d = crate::ged::variety_dimension(n, m, k)?;
    let cm = mather_from_base(d, &integrals);
    result_from_mather(n, m, k, cm)
}
