//! Resolutions predicted by the combinatorial rules, for comparison with the
//! oracle.

use num_traits::Zero;
use serde::Serialize;

use super::Oracle;
use crate::arrangement::{Arrangement, ArrangementClass};
use crate::error::{Error, Result};
use crate::poly::{product, LinearForm};
use crate::residual::{choose_general_form, span_form};
use crate::resolution::{
    build_recursive, connected_pencils_residual, disconnected_pencils_residual, residual_to_top, three_pencils_tables,
    FreeResolution,
};

/// What the rules say about the residual and the top part of a line
/// arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    /// Name of the rule that produced the tables, or why there are none.
    pub rule: String,
    pub residual: Option<FreeResolution>,
    pub top: Option<FreeResolution>,
    /// Set when the builder found an ordering but some minimality question
    /// stayed open, so only the Hilbert function is known.
    pub hilbert_only: bool,
    /// Hilbert function of `S/r_A` up to `2d`, when known.
    pub residual_hilbert: Option<Vec<i64>>,
    /// The order in which the builder added the hyperplanes.
    pub order: Option<Vec<usize>>,
}

impl Prediction {
    fn from_residual(residual: FreeResolution, d: usize, nvars: usize) -> Result<Prediction> {
        let top = residual_to_top(&residual, d)?;
        let rule = format!("{}, then {}", residual.meta().rule, top.meta().rule);
        let top = top.relabeled("top", &rule);
        Ok(Prediction {
            rule: residual.meta().rule.clone(),
            residual_hilbert: Some(residual.hilbert_function(nvars, 2 * d)),
            residual: Some(residual),
            top: Some(top),
            hilbert_only: false,
            order: None,
        })
    }
}

/// Decides whether the generator `p` of the basic double link that adds
/// hyperplane `next` to the subarrangement `prefix` is a minimal generator of
/// the residual of the subarrangement.
///
/// When `next` passes through a flat `Q` of the subarrangement, `p` is `l_Q`
/// times the lines of the subarrangement that miss `Q`; otherwise it is the
/// product of all of them.
pub fn builder_decision(oracle: &Oracle, a: &Arrangement, prefix: &[usize], next: usize, seed: u64) -> Result<bool> {
    let sub = a.subarrangement(prefix)?;
    let l = choose_general_form(&sub, seed);
    let h = &a.forms()[next];
    let on = sub.flats_on(h)?;
    let p = match on.as_slice() {
        [] => sub.defining_polynomial(),
        [q] => {
            let flat = &sub.flats()[*q];
            let point = flat.point().ok_or_else(|| Error::InvalidArgument("flats of lines are points".into()))?;
            let lq = span_form(flat, l.dual_point()).ok_or_else(|| Error::Hypothesis("dual point on a flat".into()))?;
            let mut factors: Vec<LinearForm> = vec![lq];
            factors.extend(sub.forms().iter().filter(|f| !f.evaluate(&point).is_zero()).cloned());
            product(&factors)
        }
        _ => return Err(Error::NotAlmostGeneric(on.len())),
    };
    oracle.residual_ideal(&sub, &l)?.is_minimal_generator(&p)
}

/// Tables from the closed forms where the class has one, otherwise from the
/// almost generic builder, asking `oracle` (if given) whenever degrees alone
/// do not decide a step. The oracle only handles lines, so for `n >= 3` the
/// builder runs on the lattice alone.
pub fn predict(a: &Arrangement, oracle: Option<&Oracle>, seed: u64) -> Result<Prediction> {
    let oracle = oracle.filter(|_| a.n() == 2);
    let lattice = a.lattice();
    let d = a.d();
    let nvars = a.nvars();
    match lattice.classify() {
        ArrangementClass::ThreePencils { case, a: x, b: y, c: z } => {
            let t = three_pencils_tables(case, x, y, z)?;
            return Ok(Prediction {
                rule: t.residual.meta().rule.clone(),
                residual_hilbert: Some(t.residual.hilbert_function(nvars, 2 * d)),
                residual: Some(t.residual),
                top: Some(t.top),
                hilbert_only: false,
                order: None,
            });
        }
        ArrangementClass::ConnectedTwoPencil { .. } => {
            return Prediction::from_residual(connected_pencils_residual(lattice)?, d, nvars);
        }
        _ => {}
    }
    if let Ok(r) = disconnected_pencils_residual(lattice) {
        return Prediction::from_residual(r, d, nvars);
    }
    let mut failure = None;
    let built = build_recursive(lattice, |prefix, next, _| {
        let oracle = oracle?;
        match builder_decision(oracle, a, prefix, next, seed) {
            Ok(flag) => Some(flag),
            Err(e) => {
                failure.get_or_insert(e);
                None
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let Some(built) = built else {
        return Ok(Prediction {
            rule: "no almost generic ordering exists; oracle required".into(),
            residual: None,
            top: None,
            hilbert_only: false,
            residual_hilbert: None,
            order: None,
        });
    };
    let hilbert = built.hilbert_function(nvars, 2 * d);
    match built.residual {
        Some(r) => {
            let mut p = Prediction::from_residual(r, d, nvars)?;
            p.order = Some(built.order);
            Ok(p)
        }
        None => Ok(Prediction {
            rule: "built by almost generic additions, Hilbert function only; oracle required for Betti numbers".into(),
            residual: None,
            top: None,
            hilbert_only: true,
            residual_hilbert: Some(hilbert),
            order: Some(built.order),
        }),
    }
}
