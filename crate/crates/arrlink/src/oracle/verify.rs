//! The cross-check harness: every structural statement about one line
//! arrangement, tested against the oracle's graded pieces.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use super::{exact_rank, modular, n_j, predict, GradedIdeal, IntForm, Oracle};
use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::freeness::decide_freeness;
use crate::invariants::tjurina;
use crate::poly::{directional_derivative, MonomialIndex};
use crate::residual::GeneralForm;
use crate::resolution::{jacobian_and_milnor_from_sat, milnor_duality_check, FreeResolution};

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` when the check could not be run (for instance `upto` too small).
    pub passed: Option<bool>,
    pub detail: String,
    /// First degree where the two sides differ.
    pub first_discrepancy: Option<usize>,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Check {
        Check {
            name: name.into(),
            passed: Some(passed),
            detail,
            first_discrepancy: None,
        }
    }

    fn degreewise(name: &str, mismatch: Option<usize>, upto: usize) -> Check {
        Check {
            name: name.into(),
            passed: Some(mismatch.is_none()),
            detail: match mismatch {
                None => format!("equal in every degree <= {upto}"),
                Some(j) => format!("differ in degree {j}"),
            },
            first_discrepancy: mismatch,
        }
    }

    fn skipped(name: &str, why: String) -> Check {
        Check {
            name: name.into(),
            passed: None,
            detail: why,
            first_discrepancy: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub d: usize,
    pub form: String,
    pub upto: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// No check failed. Skipped checks do not count as failures.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.passed == Some(false)).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verification of {} lines with l = {}, degrees <= {}\n", self.d, self.form, self.upto);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = match c.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            let _ = writeln!(out, "  {status}  {:width$}  {}", c.name, c.detail);
        }
        out
    }
}

fn first_mismatch(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// `dim [(I, p)]_j`, using that `I` is known by its conditions: it is
/// `dim [I]_j` plus the rank of the conditions of `I` evaluated on the
/// multiples of `p`.
fn dim_with(ideal: &GradedIdeal, p: &IntForm, j: usize) -> Result<usize> {
    let base = ideal.dim(j)?;
    if p.degree > j {
        return Ok(base);
    }
    let lambda = ideal.annihilator(j)?;
    let n = n_j(j);
    let rho = n - base;
    let basis_idx = ideal
        .primes
        .iter()
        .map(|&q| modular::independent_rows(&lambda, n, q))
        .find(|idx| idx.len() == rho)
        .ok_or_else(|| crate::Error::Certification("no basis of conditions found".into()))?;
    let index = MonomialIndex::new(j as u32, 3);
    let shifts = MonomialIndex::new((j - p.degree) as u32, 3);
    let rows: Vec<Vec<BigInt>> = basis_idx
        .iter()
        .map(|&i| shifts.basis().iter().map(|m| p.pair(m, &lambda[i], &index)).collect())
        .collect();
    Ok(base + exact_rank(&rows, shifts.len()))
}

pub(super) fn verify_all(oracle: &Oracle, a: &Arrangement, l: &GeneralForm, upto: usize) -> Result<VerificationReport> {
    oracle.admit(a)?;
    let d = a.d();
    let lattice = a.lattice();
    let mut checks = Vec::new();

    let jac = oracle.jacobian_ideal(a)?;
    let top = oracle.top_part(a)?;
    let ci = oracle.ci_ideal(a, l)?;
    let r = oracle.residual_ideal(a, l)?;
    let aux = oracle.auxiliary_ideal(a, l)?;
    let fl = directional_derivative(&a.defining_polynomial(), l.form());

    // The symbolic decomposition against the colon ideal.
    let cmp = oracle.compare_colon(&ci, &jac, &r, upto)?;
    checks.push(Check::degreewise(
        "residual equals colon",
        cmp.mismatches.first().copied(),
        upto,
    ));

    // Tjurina number against the degree of the top part.
    let tau = tjurina(lattice);
    let deg_top = top.degree().unwrap_or(0);
    let stable = (2 * d).saturating_sub(3);
    if upto >= stable {
        let h = top.hilbert_function(upto)?;
        checks.push(Check::new(
            "tjurina equals degree of top part",
            deg_top == tau && h[upto] == tau,
            format!("tau = {tau}, local colengths sum to {deg_top}, h(J^top)({upto}) = {}", h[upto]),
        ));
    } else {
        checks.push(Check::new(
            "tjurina equals degree of top part",
            deg_top == tau,
            format!("tau = {tau}, local colengths sum to {deg_top}"),
        ));
    }

    // Regularity of the residual.
    let r_table = if upto >= d {
        match oracle.betti_cm_codim2(&r, upto) {
            Ok(t) => Some(t),
            Err(e) => {
                checks.push(Check::new("residual regularity is d - 1", false, e.to_string()));
                None
            }
        }
    } else {
        checks.push(Check::skipped("residual regularity is d - 1", format!("needs degrees up to {d}")));
        None
    };
    if let Some(t) = &r_table {
        checks.push(Check::new(
            "residual regularity is d - 1",
            t.regularity() == d as i64 - 1,
            format!("oracle resolution {} has regularity {}", render(t), t.regularity()),
        ));
    }

    // Initial degree of the top part.
    if d >= 2 && upto >= d - 1 {
        let low = top.dim(d - 2)?;
        let (t1, j1) = (top.dim(d - 1)?, jac.dim(d - 1)?);
        checks.push(Check::new(
            "top part starts in degree d - 1",
            low == 0 && t1 >= j1 && t1 > 0,
            format!("dim [J^top]_{} = {low}, dim [J^top]_{} = {t1} >= dim [J]_{} = {j1}", d - 2, d - 1, d - 1),
        ));
    }

    // The auxiliary ideal.
    checks.push(Check::new(
        "derivative is a minimal generator of the residual",
        r.is_minimal_generator(&fl)?,
        format!("df/dl has degree {}", d - 1),
    ));
    let fl_int = IntForm::new(&fl)?;
    let mut gap = None;
    let fl_in_r = r.contains(&fl)?;
    for j in 0..=upto {
        if !fl_in_r || dim_with(&aux, &fl_int, j)? != r.dim(j)? {
            gap = Some(j);
            break;
        }
    }
    checks.push(Check::degreewise("residual generated by I and the derivative", gap, upto));
    let h_r = r.hilbert_function(upto)?;
    let h_i = aux.hilbert_function(upto)?;
    let shifted: Vec<usize> = h_r
        .iter()
        .enumerate()
        .map(|(j, &x)| if j + 2 <= d { x } else { x + 1 })
        .collect();
    checks.push(Check::degreewise(
        "hilbert function of I shifts by one from degree d - 1",
        first_mismatch(&h_i, &shifted),
        upto,
    ));
    if upto > d {
        match oracle.betti_cm_codim2(&aux, upto) {
            Ok(t) => checks.push(Check::new(
                "regularity of I is d",
                t.regularity() == d as i64,
                format!("oracle resolution {} has regularity {}", render(&t), t.regularity()),
            )),
            Err(e) => checks.push(Check::new("regularity of I is d", false, e.to_string())),
        }
    } else {
        checks.push(Check::skipped("regularity of I is d", format!("needs degrees up to {}", d + 1)));
    }

    // Predicted tables.
    let prediction = predict(a, Some(oracle), 0)?;
    match (&prediction.residual, &r_table) {
        (Some(p), Some(o)) => checks.push(Check::new(
            "predicted residual table",
            p.same_betti(o),
            format!("{}: {} vs oracle {}", prediction.rule, render(p), render(o)),
        )),
        _ => checks.push(Check::skipped(
            "predicted residual table",
            format!("{} (no table to compare)", prediction.rule),
        )),
    }
    if let Some(h) = &prediction.residual_hilbert {
        let h: Vec<usize> = h.iter().take(upto + 1).map(|&x| x as usize).collect();
        checks.push(Check::degreewise(
            "predicted residual hilbert function",
            first_mismatch(&h, &h_r),
            upto,
        ));
    }

    let top_table = if upto > stable {
        oracle.betti_cm_codim2(&top, upto).ok()
    } else {
        None
    };
    match (&prediction.top, &top_table) {
        (Some(p), Some(o)) => checks.push(Check::new(
            "predicted top table",
            p.same_betti(o),
            format!("{}: {} vs oracle {}", prediction.rule, render(p), render(o)),
        )),
        _ => checks.push(Check::skipped("predicted top table", "no table to compare".into())),
    }

    // Jacobian and Milnor tables from the saturation.
    match &top_table {
        Some(sat) => match jacobian_and_milnor_from_sat(sat, d) {
            Ok(tables) => {
                let predicted: Vec<usize> = tables
                    .jacobian
                    .hilbert_function(3, upto)
                    .iter()
                    .map(|&x| x as usize)
                    .collect();
                let measured = jac.hilbert_function(upto)?;
                checks.push(Check::degreewise(
                    "jacobian table from the saturation",
                    first_mismatch(&predicted, &measured),
                    upto,
                ));
                match &tables.milnor {
                    Some(m) => checks.push(Check::new(
                        "milnor table is self-dual",
                        milnor_duality_check(m, d),
                        m.to_string(),
                    )),
                    None => checks.push(Check::new(
                        "milnor table is self-dual",
                        tables.free,
                        "free: the Milnor module is zero".into(),
                    )),
                }
            }
            Err(e) => checks.push(Check::new("jacobian table from the saturation", false, e.to_string())),
        },
        None => checks.push(Check::skipped(
            "jacobian table from the saturation",
            format!("needs degrees past {stable}"),
        )),
    }

    // Freeness.
    if upto >= stable {
        let f = decide_freeness(a, 0, oracle)?;
        let bits: Vec<String> = f.routes.iter().map(|v| format!("{}: {}", v.route, v.free)).collect();
        let exponents = match f.exponents {
            Some((e1, e2)) => format!("exponents ({e1}, {e2})"),
            None => "no exponents".into(),
        };
        checks.push(Check::new(
            "freeness routes agree",
            f.consistent(),
            format!(
                "free = {}, {exponents}; {}",
                f.free,
                bits.join("; ")
            ),
        ));
    } else {
        checks.push(Check::skipped("freeness routes agree", format!("needs degrees up to {stable}")));
    }

    Ok(VerificationReport {
        d,
        form: l.form().to_string(),
        upto,
        checks,
    })
}

fn render(t: &FreeResolution) -> String {
    t.modules()
        .iter()
        .map(|m| crate::resolution::render_module(m))
        .collect::<Vec<_>>()
        .join(" <- ")
}
