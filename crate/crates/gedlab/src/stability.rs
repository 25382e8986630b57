//! Empirical certification of the stable-polynomiality and monomial-reduction
//! behavior of the gED: fit exact bivariate polynomials to gED grids, detect
//! stable windows, and tabulate the monomial-reduction comparison. Fitting is
//! exact rational linear algebra; there is no tolerance anywhere, a point
//! either matches or it does not.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::ged::{ged_det, ged_neuro, SupportSpec};
use crate::linalg::{solve_exact, SolveOutcome};
use crate::{GedError, Int, Rat};

/// Bivariate polynomial in `(n, m)` with exact rational coefficients,
/// keyed by `(n_exponent, m_exponent)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BivariatePoly {
    pub fn new(terms: BTreeMap<(u32, u32), Rat>) -> Self {
        let mut terms = terms;
        terms.retain(|_, c| !c.is_zero());
        BivariatePoly { terms }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BivariatePoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn eval(&self, n: u64, m: u64) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            let p = Int::from(n).pow(a) * Int::from(m).pow(b);
            acc += c * Rat::from_integer(p);
        }
        acc
    }
}

/// One held-out comparison: the value the polynomial predicts at `(n, m)`
/// against the exactly computed gED. The prediction stays rational so a
/// fractional miss is visible as such.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationPoint {
    pub n: u64,
    pub m: u64,
    pub predicted: Rat,
    pub actual: Int,
}

impl ValidationPoint {
    pub fn exact(&self) -> bool {
        self.predicted == Rat::from_integer(self.actual.clone())
    }
}

/// Grid rectangle as (lower corner, upper corner), inclusive.
pub type GridWindow = ((u64, u64), (u64, u64));

/// Outcome of a stable-polynomiality probe.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub support: SupportSpec,
    pub width: u64,
    pub n_range: (u64, u64),
    pub m_range: (u64, u64),
    pub max_degree: u32,
    /// the last exact interpolant found on a fit window, if any
    pub poly: Option<BivariatePoly>,
    /// lower corner and upper corner of the window the polynomial was fitted on
    pub fit_window: Option<GridWindow>,
    pub validation_points: Vec<ValidationPoint>,
    /// true iff every held-out point matched exactly
    pub stable: bool,
    /// lower corner of the first validating window
    pub detected_threshold: Option<(u64, u64)>,
}

/// Monomial-reduction comparison row: the same `(n, m)` evaluated with the
/// full support and with the monomial support of the same degree, through
/// independently resolved `N_S`.
#[derive(Clone, Debug)]
pub struct ReductionRow {
    pub n: u64,
    pub m: u64,
    pub n_s_full: u64,
    pub n_s_monomial: u64,
    pub ged_full: Int,
    pub ged_monomial: Int,
}

impl ReductionRow {
    pub fn agree(&self) -> bool {
        self.ged_full == self.ged_monomial
    }
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub support: SupportSpec,
    pub width: u64,
    pub n_range: (u64, u64),
    pub m_range: (u64, u64),
    pub rows: Vec<ReductionRow>,
    /// lower corner of the largest all-agreeing upper-right subrectangle
    pub agreement_region: Option<(u64, u64)>,
    /// true when the agreeing set is upward closed within the grid
    pub upward_closed: bool,
    pub first_disagreements: Vec<(u64, u64)>,
}

/// Constancy-in-N probe at fixed `(m, k)`.
#[derive(Clone, Debug)]
pub struct StabilityTable {
    pub cols: u64,
    pub rank: u64,
    pub rows: Vec<(u64, Int)>,
    /// first `N` of the longest constant suffix (present iff the table is
    /// nonempty; equals the last `N` when no two consecutive values agree)
    pub constant_from: Option<u64>,
}

fn range_values(range: (u64, u64)) -> Vec<u64> {
    (range.0..=range.1).collect()
}

/// Exact interpolation of `values` on `points` by a polynomial of total
/// degree `<= degree`; `None` when the overdetermined system is inconsistent
/// or rank-deficient. On an axis that takes a single value the corresponding
/// monomials are degenerate and are dropped up front.
fn interpolate(
    points: &[(u64, u64)],
    values: &BTreeMap<(u64, u64), Int>,
    degree: u32,
    n_varies: bool,
    m_varies: bool,
) -> Option<BivariatePoly> {
    let monomials: Vec<(u32, u32)> = (0..=degree)
        .flat_map(|a| (0..=(degree - a)).map(move |b| (a, b)))
        .filter(|&(a, b)| (n_varies || a == 0) && (m_varies || b == 0))
        .collect();
    if points.len() < monomials.len() {
        return None;
    }
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|&(n, m)| {
            monomials
                .iter()
                .map(|&(a, b)| Rat::from_integer(Int::from(n).pow(a) * Int::from(m).pow(b)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = points
        .iter()
        .map(|p| Rat::from_integer(values[p].clone()))
        .collect();
    match solve_exact(&rows, &rhs) {
        SolveOutcome::Unique(coeffs) => {
            let terms = monomials.into_iter().zip(coeffs).collect();
            Some(BivariatePoly::new(terms))
        }
        _ => None,
    }
}

/// Fits a bivariate polynomial to the gED over a grid and validates it on
/// the held-out outer border (n = n_max or m = m_max). The degree grows from
/// zero and the window's lower corner slides upward until the held-out
/// values are reproduced exactly; failures are reported, never asserted away.
pub fn fit_polynomial(
    support: &SupportSpec,
    width: u64,
    n_range: (u64, u64),
    m_range: (u64, u64),
    max_degree: u32,
) -> Result<FitReport, GedError> {
    if n_range.0 > n_range.1 || m_range.0 > m_range.1 {
        return Err(GedError::invalid("empty grid range"));
    }
    let ns = range_values(n_range);
    let ms = range_values(m_range);
    let grid: Vec<(u64, u64)> = ns
        .iter()
        .flat_map(|&n| ms.iter().map(move |&m| (n, m)))
        .collect();
    let values: BTreeMap<(u64, u64), Int> = grid
        .par_iter()
        .map(|&(n, m)| Ok(((n, m), ged_neuro(n, m, support, width)?.ged)))
        .collect::<Result<_, GedError>>()?;

    // the window shrinks from above by one step per varying axis; a
    // singleton axis keeps its only value inside the window
    let n_varies = n_range.0 < n_range.1;
    let m_varies = m_range.0 < m_range.1;
    let n_hi_w = if n_varies { n_range.1 - 1 } else { n_range.1 };
    let m_hi_w = if m_varies { m_range.1 - 1 } else { m_range.1 };
    let holdout_for = |lo_n: u64, lo_m: u64| -> Vec<(u64, u64)> {
        grid.iter()
            .copied()
            .filter(|&(n, m)| (n > n_hi_w || m > m_hi_w) && n >= lo_n && m >= lo_m)
            .collect()
    };
    let validate = |poly: &BivariatePoly, lo_n: u64, lo_m: u64| -> Vec<ValidationPoint> {
        holdout_for(lo_n, lo_m)
            .into_iter()
            .map(|(n, m)| ValidationPoint {
                n,
                m,
                predicted: poly.eval(n, m),
                actual: values[&(n, m)].clone(),
            })
            .collect()
    };

    let mut last_window_fit: Option<(BivariatePoly, GridWindow)> = None;
    for degree in 0..=max_degree {
        let mut shift = 0u64;
        loop {
            let lo_n = if n_varies {
                n_range.0 + shift
            } else {
                n_range.0
            };
            let lo_m = if m_varies {
                m_range.0 + shift
            } else {
                m_range.0
            };
            if lo_n > n_hi_w || lo_m > m_hi_w {
                break;
            }
            // each varying axis must carry at least degree+1 points so the
            // interpolation problem has full column rank
            if (n_varies && n_hi_w - lo_n < degree as u64)
                || (m_varies && m_hi_w - lo_m < degree as u64)
            {
                break;
            }
            let window: Vec<(u64, u64)> = grid
                .iter()
                .copied()
                .filter(|&(n, m)| n >= lo_n && n <= n_hi_w && m >= lo_m && m <= m_hi_w)
                .collect();
            if let Some(poly) = interpolate(&window, &values, degree, n_varies, m_varies) {
                // the interpolant matches the whole window (the solve was
                // consistent); now try the held-out points beyond it
                let validation = validate(&poly, lo_n, lo_m);
                let window_rect = ((lo_n, lo_m), (n_hi_w, m_hi_w));
                let stable = !validation.is_empty() && validation.iter().all(|v| v.exact());
                last_window_fit = Some((poly.clone(), window_rect));
                if stable {
                    return Ok(FitReport {
                        support: support.clone(),
                        width,
                        n_range,
                        m_range,
                        max_degree,
                        poly: Some(poly),
                        fit_window: Some(window_rect),
                        validation_points: validation,
                        stable: true,
                        detected_threshold: Some((lo_n, lo_m)),
                    });
                }
            }
            if !n_varies && !m_varies {
                break;
            }
            shift += 1;
        }
    }
    // nothing validated: report the last exact window fit (if any) with its
    // failed validation, or a bare failure
    let (poly, fit_window, validation_points) = match last_window_fit {
        Some((poly, rect)) => {
            let validation = validate(&poly, rect.0 .0, rect.0 .1);
            (Some(poly), Some(rect), validation)
        }
        None => (None, None, Vec::new()),
    };
    Ok(FitReport {
        support: support.clone(),
        width,
        n_range,
        m_range,
        max_degree,
        poly,
        fit_window,
        validation_points,
        stable: false,
        detected_threshold: None,
    })
}

/// Computes the monomial-reduction comparison table over a grid: for each
/// `(n, m)` the gED with the full support `S` against the gED with the
/// monomial support `{deg S}`, resolved through independent `N_S`.
pub fn verify_monomial_reduction(
    support: &SupportSpec,
    width: u64,
    n_range: (u64, u64),
    m_range: (u64, u64),
) -> Result<ReductionReport, GedError> {
    if n_range.0 > n_range.1 || m_range.0 > m_range.1 {
        return Err(GedError::invalid("empty grid range"));
    }
    let monomial = SupportSpec::monomial(support.degree());
    let grid: Vec<(u64, u64)> = range_values(n_range)
        .into_iter()
        .flat_map(|n| range_values(m_range).into_iter().map(move |m| (n, m)))
        .collect();
    let rows: Vec<ReductionRow> = grid
        .par_iter()
        .map(|&(n, m)| {
            let full = ged_neuro(n, m, support, width)?;
            let mono = ged_neuro(n, m, &monomial, width)?;
            Ok(ReductionRow {
                n,
                m,
                n_s_full: full.rows,
                n_s_monomial: mono.rows,
                ged_full: full.ged,
                ged_monomial: mono.ged,
            })
        })
        .collect::<Result<_, GedError>>()?;

    let agree = |n: u64, m: u64| -> bool {
        rows.iter()
            .find(|r| r.n == n && r.m == m)
            .map(|r| r.agree())
            .unwrap_or(false)
    };
    // largest-area all-agreeing upper-right rectangle
    let mut best: Option<((u64, u64), u64)> = None;
    for lo_n in n_range.0..=n_range.1 {
        for lo_m in m_range.0..=m_range.1 {
            let all = (lo_n..=n_range.1).all(|n| (lo_m..=m_range.1).all(|m| agree(n, m)));
            if all {
                let area = (n_range.1 - lo_n + 1) * (m_range.1 - lo_m + 1);
                if best.is_none_or(|(_, a)| area > a) {
                    best = Some(((lo_n, lo_m), area));
                }
            }
        }
    }
    // upward closure of the agreeing set within the grid
    let upward_closed = rows
        .iter()
        .all(|r| !r.agree() || (r.n..=n_range.1).all(|n| (r.m..=m_range.1).all(|m| agree(n, m))));
    let first_disagreements: Vec<(u64, u64)> = rows
        .iter()
        .filter(|r| !r.agree())
        .take(8)
        .map(|r| (r.n, r.m))
        .collect();
    Ok(ReductionReport {
        support: support.clone(),
        width,
        n_range,
        m_range,
        rows,
        agreement_region: best.map(|(corner, _)| corner),
        upward_closed,
        first_disagreements,
    })
}

/// `gED_det(N, m, k)` across a range of `N` at fixed `(m, k)`, flagging the
/// longest constant suffix.
pub fn stability_in_n(
    cols: u64,
    rank: u64,
    n_range: (u64, u64),
) -> Result<StabilityTable, GedError> {
    if n_range.0 > n_range.1 {
        return Err(GedError::invalid("empty range"));
    }
    let rows: Vec<(u64, Int)> = range_values(n_range)
        .par_iter()
        .map(|&n| Ok((n, ged_det(n, cols, rank)?.ged.clone())))
        .collect::<Result<_, GedError>>()?;
    let mut constant_from = rows.last().map(|r| r.0);
    for w in rows.windows(2).rev() {
        if w[0].1 == w[1].1 {
            constant_from = Some(w[0].0);
        } else {
            break;
        }
    }
    Ok(StabilityTable {
        cols,
        rank,
        rows,
        constant_from,
    })
}
