//! Building an arrangement one almost generic hyperplane at a time.
//!
//! Each step replaces the residual `r` by `x * r + (p)` with `x` the new
//! hyperplane and `deg p = |A ∩ H|`. The Hilbert function follows from the
//! degrees alone; the Betti numbers also need to know whether `p` is a
//! minimal generator of `r`, which the caller decides (usually with the
//! oracle) whenever the degrees leave it open.

use std::collections::HashSet;

use serde::Serialize;

use super::{bdl_update, FreeResolution};
use crate::arrangement::Lattice;

/// One hyperplane added during the build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildStep {
    pub hyperplane: usize,
    /// `|A_i ∩ H_i|`, the degree of the new generator `p`.
    pub intersections: usize,
    /// Number of flats of the prefix on the new hyperplane (0 or 1).
    pub flats_on: usize,
    /// Whether `p` is a minimal generator of the previous residual; `None`
    /// when it could not be decided.
    pub minimal: Option<bool>,
}

/// Outcome of a successful build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildResult {
    pub order: Vec<usize>,
    pub steps: Vec<BuildStep>,
    /// A free resolution of the residual that treats every `p` as a new
    /// generator. It has the right Hilbert function but need not be minimal.
    pub hilbert_chain: FreeResolution,
    /// The minimal resolution, present when every step was decided.
    pub residual: Option<FreeResolution>,
}

impl BuildResult {
    /// `h_{S/r}(j)` for `j = 0..=upto` over `nvars` variables.
    pub fn hilbert_function(&self, nvars: usize, upto: usize) -> Vec<i64> {
        self.hilbert_chain.hilbert_function(nvars, upto)
    }

    /// Whether some step was left undecided, so only the Hilbert function is
    /// known.
    pub fn hilbert_only(&self) -> bool {
        self.residual.is_none()
    }
}

/// Flats of the whole lattice through `h`, as member lists.
fn flats_through(lattice: &Lattice, h: usize) -> Vec<&Vec<usize>> {
    lattice
        .flats()
        .iter()
        .filter(|m| m.binary_search(&h).is_ok())
        .collect()
}

/// `(number of prefix flats on h, |prefix ∩ h|)`.
fn counts(lattice: &Lattice, in_prefix: u64, h: usize) -> (usize, usize) {
    let mut on = 0;
    let mut meets = 0;
    for members in flats_through(lattice, h) {
        let inside = members.iter().filter(|&&m| in_prefix >> m & 1 == 1).count();
        if inside >= 2 {
            on += 1;
        }
        if inside >= 1 {
            meets += 1;
        }
    }
    (on, meets)
}

fn search(lattice: &Lattice, prefix: &mut Vec<usize>, mask: u64, dead: &mut HashSet<u64>) -> bool {
    let d = lattice.d();
    if prefix.len() == d {
        return true;
    }
    if dead.contains(&mask) {
        return false;
    }
    let remaining: Vec<usize> = (0..d).filter(|&h| mask >> h & 1 == 0).collect();
    // Flats on a hyperplane only accumulate, so one blocked hyperplane
    // blocks every continuation.
    if remaining.iter().any(|&h| counts(lattice, mask, h).0 > 1) {
        dead.insert(mask);
        return false;
    }
    for h in remaining {
        prefix.push(h);
        if search(lattice, prefix, mask | 1 << h, dead) {
            return true;
        }
        prefix.pop();
    }
    dead.insert(mask);
    false
}

/// Finds the lexicographically least ordering of the hyperplanes in which
/// each one is almost generic with respect to those before it, and chains
/// the residual resolutions along it.
///
/// `decide(prefix, next, e)` is asked whether the new generator of degree
/// `e` is a minimal generator of the residual of `prefix` whenever the
/// current minimal table has a generator of that degree. Returns `None` when
/// no ordering exists.
pub fn build_recursive(
    lattice: &Lattice,
    mut decide: impl FnMut(&[usize], usize, i64) -> Option<bool>,
) -> Option<BuildResult> {
    let d = lattice.d();
    assert!(d <= 64, "builder handles at most 64 hyperplanes");
    let mut order = Vec::with_capacity(d);
    if !search(lattice, &mut order, 0, &mut HashSet::new()) {
        return None;
    }

    let mut chain = FreeResolution::unit("residual", 1);
    let mut minimal = Some(chain.clone());
    let mut steps = Vec::with_capacity(d);
    let mut mask = 1u64 << order[0];
    for i in 1..d {
        let h = order[i];
        let (on, meets) = counts(lattice, mask, h);
        let e = meets as i64;
        chain = bdl_update(&chain, 1, e, false).expect("valid update");
        let decision = match &minimal {
            Some(res) if !res.generators().contains(&e) => Some(false),
            Some(_) => decide(&order[..i], h, e),
            None => None,
        };
        minimal = match (minimal, decision) {
            (Some(res), Some(flag)) => Some(bdl_update(&res, 1, e, flag).expect("degree checked")),
            _ => None,
        };
        steps.push(BuildStep {
            hyperplane: h,
            intersections: meets,
            flats_on: on,
            minimal: decision,
        });
        mask |= 1 << h;
    }
    let finish = |res: FreeResolution| {
        let rule = "built by almost generic additions";
        let mut res = res.relabeled("residual", rule);
        res.meta.d = d;
        res
    };
    Some(BuildResult {
        order,
        steps,
        hilbert_chain: finish(chain),
        residual: minimal.map(finish),
    })
}
