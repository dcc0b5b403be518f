//! Freeness of line arrangements, decided three ways.
//!
//! Two routes look at the auxiliary ideal `I = r_A ∩ I_{l^v}`: a free
//! arrangement with exponents `(a - 1, b - 1)` is one whose `I` is a complete
//! intersection of type `(a, b)` with `a + b = d + 1`, and those are
//! recognized either from the minimal generators of `I` or from a symmetric
//! h-vector together with the Cayley-Bacharach conditions on the ideals
//! `a_P ∩ I_{l^v}`. The third route compares the Jacobian ideal with its
//! saturation directly.

use std::fmt;

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::invariants::{check_ci, tjurina};
use crate::oracle::{GradedIdeal, Oracle};
use crate::residual::{choose_general_form, GeneralForm};

/// Which test produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    GeneratorCount,
    HVector,
    Direct,
    /// Concurrent lines: the Jacobian ideal is a complete intersection.
    CompleteIntersection,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::GeneratorCount => "generators of the auxiliary ideal",
            Route::HVector => "symmetric h-vector and Cayley-Bacharach",
            Route::Direct => "Jacobian ideal against its saturation",
            Route::CompleteIntersection => "concurrent lines",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub free: bool,
    /// `(e1, e2)` with `e1 <= e2` and `e1 + e2 = d - 1`.
    pub exponents: Option<(usize, usize)>,
    pub route: Route,
    /// Degrees `(a, b)` of the two generators of `I` when free.
    pub evidence: Option<(usize, usize)>,
    pub detail: String,
}

impl FreenessVerdict {
    fn free(route: Route, a: usize, b: usize, detail: String) -> FreenessVerdict {
        FreenessVerdict {
            free: true,
            exponents: Some((a - 1, b - 1)),
            route,
            evidence: Some((a, b)),
            detail,
        }
    }

    fn not_free(route: Route, detail: String) -> FreenessVerdict {
        FreenessVerdict {
            free: false,
            exponents: None,
            route,
            evidence: None,
            detail,
        }
    }
}

fn require_lines(a: &Arrangement) -> Result<()> {
    if a.n() != 2 {
        return Err(Error::InvalidArgument(
            "freeness is decided for line arrangements; restrict higher-dimensional arrangements first".into(),
        ));
    }
    Ok(())
}

fn require_non_concurrent(a: &Arrangement) -> Result<()> {
    require_lines(a)?;
    if check_ci(a.lattice()) || a.d() < 3 {
        return Err(Error::Concurrent);
    }
    Ok(())
}

/// Free exactly when `I` has two minimal generators, of degrees `a <= b`
/// with `a + b = d + 1` and `a >= 2`.
pub fn freeness_by_generator_count(a: &Arrangement, l: &GeneralForm, oracle: &Oracle) -> Result<FreenessVerdict> {
    require_non_concurrent(a)?;
    let aux = oracle.auxiliary_ideal(a, l)?;
    generator_count_of(&aux, a.d())
}

fn generator_count_of(aux: &GradedIdeal, d: usize) -> Result<FreenessVerdict> {
    // reg I = d, so no minimal generator lives above degree d.
    let counts = aux.minimal_generator_counts(d)?;
    let degrees: Vec<usize> = counts
        .iter()
        .flat_map(|(&j, &c)| std::iter::repeat(j).take(c))
        .collect();
    let detail = format!("minimal generator degrees of I: {degrees:?}");
    Ok(match degrees.as_slice() {
        &[a, b] if a + b == d + 1 && a >= 2 => FreenessVerdict::free(Route::GeneratorCount, a, b, detail),
        _ => FreenessVerdict::not_free(Route::GeneratorCount, detail),
    })
}

/// Free exactly when `h_{S/I}(d - 2 - j) = deg I - h_{S/I}(j)` for all `j`
/// and, for every flat `P`, `h_{S/(a_P ∩ I_{l^v})}(d - 2) = deg I - 1`.
pub fn freeness_by_h_vector(a: &Arrangement, l: &GeneralForm, oracle: &Oracle) -> Result<FreenessVerdict> {
    require_non_concurrent(a)?;
    let d = a.d();
    let aux = oracle.auxiliary_ideal(a, l)?;
    let h = aux.hilbert_function(d)?;
    let deg = aux.degree().expect("auxiliary ideal is described by points");
    // Both sides use the eventual value deg I outside [0, d - 2].
    let hv = |j: i64| -> usize {
        if j < 0 {
            0
        } else {
            h[(j as usize).min(d)]
        }
    };
    let dd = d as i64;
    if let Some(j) = (-1..=dd - 1).find(|&j| hv(dd - 2 - j) + hv(j) != deg) {
        return Ok(FreenessVerdict::not_free(
            Route::HVector,
            format!("h-vector of S/I is not symmetric: h({}) + h({j}) != {deg}", dd - 2 - j),
        ));
    }
    for (k, _) in a.flats().iter().enumerate() {
        let lowered = oracle.lowered_auxiliary(a, l, k)?;
        let value = lowered.hilbert_function(d - 2)?[d - 2];
        if value + 1 != deg {
            return Ok(FreenessVerdict::not_free(
                Route::HVector,
                format!("Cayley-Bacharach fails at flat {k}: h({}) = {value}, expected {}", d - 2, deg - 1),
            ));
        }
    }
    // A complete intersection of type (a, b) starts in degree a.
    let a_deg = (0..=d).find(|&j| aux.dim(j).map(|x| x > 0).unwrap_or(false)).unwrap_or(d);
    let b_deg = d + 1 - a_deg;
    let (lo, hi) = (a_deg.min(b_deg), a_deg.max(b_deg));
    Ok(FreenessVerdict::free(
        Route::HVector,
        lo,
        hi,
        format!("symmetric h-vector {h:?}, deg I = {deg}, Cayley-Bacharach holds at every flat"),
    ))
}

/// Free exactly when `[J]_j = [J^sat]_j` for `j <= 2d - 3`.
pub fn freeness_direct(a: &Arrangement, oracle: &Oracle) -> Result<bool> {
    require_lines(a)?;
    let j = oracle.jacobian_ideal(a)?;
    let top = oracle.top_part(a)?;
    Ok(first_saturation_gap(&j, &top, a.d())?.is_none())
}

/// The first degree `<= 2d - 3` where the Jacobian ideal is smaller than its
/// saturation.
pub(crate) fn first_saturation_gap(j: &GradedIdeal, top: &GradedIdeal, d: usize) -> Result<Option<usize>> {
    for k in 0..=(2 * d).saturating_sub(3) {
        if j.dim(k)? != top.dim(k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// A freeness decision by every applicable route, with consistency checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub d: usize,
    pub free: bool,
    pub exponents: Option<(usize, usize)>,
    pub routes: Vec<FreenessVerdict>,
    /// All routes returned the same bit.
    pub agree: bool,
    /// `tau = (d - 1)^2 - e1 e2` when free.
    pub tjurina_consistent: Option<bool>,
    /// `deg I = a b` when free and not concurrent.
    pub degree_consistent: Option<bool>,
    /// The generator count route gave the same verdict for a second general
    /// form.
    pub seed_stable: Option<bool>,
}

impl FreenessReport {
    /// Whether every route agreed and every consistency check held.
    pub fn consistent(&self) -> bool {
        self.agree
            && self.tjurina_consistent != Some(false)
            && self.degree_consistent != Some(false)
            && self.seed_stable != Some(false)
    }
}

/// Runs all routes on a line arrangement. Concurrent lines are free with
/// exponents `(0, d - 1)` and only the direct route applies to them.
pub fn decide_freeness(a: &Arrangement, seed: u64, oracle: &Oracle) -> Result<FreenessReport> {
    require_lines(a)?;
    let d = a.d();
    let direct = freeness_direct(a, oracle)?;
    let direct_verdict = FreenessVerdict {
        free: direct,
        exponents: None,
        route: Route::Direct,
        evidence: None,
        detail: if direct {
            format!("[J]_j = [J^sat]_j for all j <= {}", (2 * d).saturating_sub(3))
        } else {
            "the Jacobian ideal is not saturated".into()
        },
    };
    if check_ci(a.lattice()) || d < 3 {
        let ci = FreenessVerdict {
            free: true,
            exponents: Some((0, d.saturating_sub(1))),
            route: Route::CompleteIntersection,
            evidence: None,
            detail: "all lines pass through one point".into(),
        };
        let tau = tjurina(a.lattice());
        let report = FreenessReport {
            d,
            free: true,
            exponents: ci.exponents,
            agree: direct,
            routes: vec![ci, direct_verdict],
            tjurina_consistent: Some(tau == (d - 1) * (d - 1)),
            degree_consistent: None,
            seed_stable: None,
        };
        return Ok(report);
    }
    let l = choose_general_form(a, seed);
    let count = freeness_by_generator_count(a, &l, oracle)?;
    let hvec = freeness_by_h_vector(a, &l, oracle)?;
    let agree = count.free == hvec.free && count.free == direct && count.exponents == hvec.exponents;
    let free = count.free;
    let exponents = count.exponents;
    let tjurina_consistent = exponents.map(|(e1, e2)| tjurina(a.lattice()) == (d - 1) * (d - 1) - e1 * e2);
    let degree_consistent = match count.evidence {
        Some((x, y)) => Some(oracle.auxiliary_ideal(a, &l)?.degree() == Some(x * y)),
        None => None,
    };
    let other = choose_general_form(a, seed.wrapping_add(1));
    let again = freeness_by_generator_count(a, &other, oracle)?;
    let seed_stable = Some(again.free == free && again.exponents == exponents);
    Ok(FreenessReport {
        d,
        free,
        exponents,
        routes: vec![count, hvec, direct_verdict],
        agree,
        tjurina_consistent,
        degree_consistent,
        seed_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::FamilySpec;

    fn family(spec: &str) -> Arrangement {
        spec.parse::<FamilySpec>().unwrap().build(3).unwrap()
    }

    #[test]
    fn connected_pencils_are_free() {
        let oracle = Oracle::new();
        for (x, y) in [(3, 3), (3, 4), (2, 4)] {
            let a = family(&format!("connected2pencil:{x},{y}"));
            let r = decide_freeness(&a, 0, &oracle).unwrap();
            assert!(r.free && r.consistent(), "{x},{y}: {r:?}");
            let mut want = (x - 1, y - 1);
            if want.0 > want.1 {
                want = (want.1, want.0);
            }
            assert_eq!(r.exponents, Some(want));
        }
    }

    #[test]
    fn near_pencil_exponents() {
        let oracle = Oracle::new();
        for d in 4..=6 {
            let r = decide_freeness(&family(&format!("near-pencil:{d}")), 0, &oracle).unwrap();
            assert!(r.free && r.consistent());
            assert_eq!(r.exponents, Some((1, d - 2)));
        }
    }

    #[test]
    fn generic_and_disconnected_are_not_free() {
        let oracle = Oracle::new();
        let g = family("generic:4");
        let r = decide_freeness(&g, 0, &oracle).unwrap();
        assert!(!r.free && r.consistent());
        let a = family("disconnected:3,3");
        let r = decide_freeness(&a, 0, &oracle).unwrap();
        assert!(!r.free && r.consistent(), "{r:?}");
    }

    #[test]
    fn concurrent_lines() {
        let oracle = Oracle::new();
        let p = family("pencil:4");
        let l = choose_general_form(&p, 0);
        assert!(matches!(freeness_by_generator_count(&p, &l, &oracle), Err(Error::Concurrent)));
        assert!(matches!(freeness_by_h_vector(&p, &l, &oracle), Err(Error::Concurrent)));
        let r = decide_freeness(&p, 0, &oracle).unwrap();
        assert!(r.free && r.consistent());
        assert_eq!(r.exponents, Some((0, 3)));
    }
}
