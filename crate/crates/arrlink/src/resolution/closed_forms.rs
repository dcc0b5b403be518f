//! Closed-form tables: unions of disconnected pencils, the three-pencil
//! catalogue, and the passage from the saturated Jacobian ideal of a line
//! arrangement to the Jacobian ideal and the Milnor module.

use std::fmt;

use serde::Serialize;

use super::{render_module, residual_to_top, FreeResolution};
use crate::arrangement::{ArrangementClass, Lattice, PencilCase};
use crate::error::{Error, Result};
use crate::poly::count_monomials;

/// Pencil multiplicities `t_P >= 3` and the number `s` of hyperplanes through
/// none of them, provided no hyperplane passes through two such centers.
fn disconnected_data(lattice: &Lattice) -> Result<(Vec<usize>, usize)> {
    let centers = lattice.triple_flats();
    let mut s = 0;
    for h in 0..lattice.d() {
        let through = centers
            .iter()
            .filter(|&&c| lattice.flats()[c].binary_search(&h).is_ok())
            .count();
        if through >= 2 {
            return Err(Error::WrongClass {
                expected: "disconnected-pencils".into(),
                found: lattice.classify().tag(),
            });
        }
        if through == 0 {
            s += 1;
        }
    }
    let ts = centers.iter().map(|&c| lattice.flats()[c].len()).collect();
    Ok((ts, s))
}

/// General residual of a union of disconnected pencils (no hyperplane through
/// two flats of multiplicity at least three).
pub fn disconnected_pencils_residual(lattice: &Lattice) -> Result<FreeResolution> {
    let (ts, s) = disconnected_data(lattice)?;
    let d = lattice.d() as i64;
    let n0 = ts.len() as i64;
    let s = s as i64;
    let mut first = vec![d - 1; (n0 + s) as usize];
    first.extend(ts.iter().map(|&t| d - t as i64 + 1));
    let second = vec![d; (2 * n0 + s - 1).max(0) as usize];
    FreeResolution::new(
        "residual",
        lattice.d(),
        "disconnected pencils closed form",
        vec![first, second],
    )
}

/// Top-dimensional part of the Jacobian ideal of a union of disconnected
/// pencils.
pub fn disconnected_pencils_top(lattice: &Lattice) -> Result<FreeResolution> {
    let (ts, s) = disconnected_data(lattice)?;
    let d = lattice.d() as i64;
    let n0 = ts.len() as i64;
    let s = s as i64;
    let first = vec![d - 1; (2 * n0 + s) as usize];
    let mut second = vec![d; (n0 + s - 1).max(0) as usize];
    second.extend(ts.iter().map(|&t| d + t as i64 - 2));
    FreeResolution::new("top", lattice.d(), "disconnected pencils closed form", vec![first, second])
}

/// Jacobian and Milnor tables of a union of disconnected pencils of lines.
pub fn disconnected_jacobian(lattice: &Lattice) -> Result<JacobianTables> {
    jacobian_and_milnor_from_sat(&disconnected_pencils_top(lattice)?, lattice.d())
}

/// General residual of two pencils of multiplicities `a` and `b` whose
/// centers are joined by a hyperplane of the arrangement, every other
/// hyperplane passing through one of the centers.
pub fn connected_pencils_residual(lattice: &Lattice) -> Result<FreeResolution> {
    let ArrangementClass::ConnectedTwoPencil { a, b } = lattice.classify() else {
        return Err(Error::WrongClass {
            expected: "connected-2-pencil".into(),
            found: lattice.classify().tag(),
        });
    };
    let (a, b) = (a as i64, b as i64);
    let d = a + b - 1;
    FreeResolution::new(
        "residual",
        lattice.d(),
        "two connected pencils",
        vec![vec![a, b, a + b - 2], vec![d, d]],
    )
}

/// Residual and top tables of one of the three-pencil configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilTables {
    pub case: PencilCase,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub residual: FreeResolution,
    pub top: FreeResolution,
}

/// Tables for three pencils of lines joined according to `case`, where `a`,
/// `b`, `c` count the lines through each center other than the joining ones
/// (conventions as in [`PencilCase::multiplicities`]).
pub fn three_pencils_tables(case: PencilCase, a: usize, b: usize, c: usize) -> Result<PencilTables> {
    let min = if case == PencilCase::I { 3 } else { 1 };
    if a < min || b < min || c < min {
        return Err(Error::InvalidArgument(format!(
            "three pencils in case {case} need a, b, c >= {min}"
        )));
    }
    let d = case.degree(a, b, c);
    let (di, ai, bi, ci) = (d as i64, a as i64, b as i64, c as i64);
    let (first, second) = match case {
        PencilCase::I => (
            vec![di - 1, di - 1, di - 1, di - ai + 1, di - bi + 1, di - ci + 1],
            vec![di; 5],
        ),
        PencilCase::II => (vec![di - 1, di - 1, di - ai, di - bi, di + 1 - ci], vec![di; 4]),
        PencilCase::III => (vec![di - 1, di - ai, di - bi - 1, di - ci], vec![di; 3]),
        PencilCase::IV => (vec![di - 1, di - ai, di - bi, di - ci], vec![di; 3]),
        PencilCase::V => (
            vec![di - 1, di - ai - 1, di - bi - 1, di - ci - 1],
            vec![di, di, di - 1],
        ),
    };
    let rule = format!("three pencils, case {case}");
    let residual = FreeResolution::new("residual", d, &rule, vec![first, second])?;
    let top = residual_to_top(&residual, d)?.relabeled("top", &rule);
    Ok(PencilTables {
        case,
        a,
        b,
        c,
        d,
        residual,
        top,
    })
}

/// The minimal free resolution of a Milnor module: four modules `F_0..F_3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorTable {
    pub d: usize,
    pub modules: [Vec<i64>; 4],
}

impl MilnorTable {
    /// Hilbert function of the module, `j = 0..=upto`, over three variables.
    pub fn hilbert_function(&self, upto: usize) -> Vec<i64> {
        (0..=upto as i64)
            .map(|j| {
                self.modules
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        m.iter().map(|&t| sign * count_monomials(j - t, 3) as i64).sum::<i64>()
                    })
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for MilnorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        for m in self.modules.iter().rev() {
            write!(f, " -> {}", render_module(m))?;
        }
        write!(f, " -> M -> 0")
    }
}

/// Jacobian ideal and Milnor module tables of a line arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianTables {
    pub free: bool,
    pub jacobian: FreeResolution,
    /// Absent for free arrangements, whose Milnor module is zero.
    pub milnor: Option<MilnorTable>,
}

fn dual(twists: &[i64], shift: i64) -> Vec<i64> {
    let mut out: Vec<i64> = twists.iter().map(|t| shift - t).collect();
    out.sort_unstable();
    out
}

/// Given the resolution `[S^b(-d+1) + F, G]` of the saturation of the
/// Jacobian ideal of `d` lines, returns the resolutions of the Jacobian ideal
/// and of the Milnor module.
pub fn jacobian_and_milnor_from_sat(res_sat: &FreeResolution, d: usize) -> Result<JacobianTables> {
    if res_sat.len() > 2 {
        return Err(Error::InvalidResolution(
            "the saturated Jacobian ideal of lines has a resolution of length at most two".into(),
        ));
    }
    let di = d as i64;
    let (low, f): (Vec<i64>, Vec<i64>) = res_sat.generators().iter().copied().partition(|&t| t == di - 1);
    let b = low.len();
    let g = res_sat.module(2).to_vec();
    if b < 2 || f.iter().any(|&t| t < di - 1) {
        return Err(Error::InvalidResolution(format!(
            "saturated Jacobian ideal needs at least two generators of degree {} and none below, got {:?}",
            di - 1,
            res_sat.generators()
        )));
    }
    if f.is_empty() && b <= 3 {
        let jacobian = res_sat.clone().relabeled("jacobian", "saturated, hence free");
        return Ok(JacobianTables {
            free: true,
            jacobian,
            milnor: None,
        });
    }
    if b < 3 {
        return Err(Error::InvalidResolution(
            "a non-free line arrangement has at least three saturation generators of degree d - 1".into(),
        ));
    }
    let top_shift = 3 * di - 3;
    let mut last = vec![2 * di - 2; b - 3];
    last.extend(dual(&f, top_shift));
    let jacobian = FreeResolution::new(
        "jacobian",
        d,
        "from the saturation by self-duality",
        vec![vec![di - 1; 3], dual(&g, top_shift), last.clone()],
    )?;
    let mut first = vec![di - 1; b - 3];
    first.extend(f);
    first.sort_unstable();
    last.sort_unstable();
    let milnor = MilnorTable {
        d,
        modules: [first, g, dual(res_sat.module(2), top_shift), last],
    };
    Ok(JacobianTables {
        free: false,
        jacobian,
        milnor: Some(milnor),
    })
}

/// Whether a Milnor table is carried to itself by `t -> 3(d - 1) - t`, with
/// `F_0` paired to `F_3` and `F_1` to `F_2`.
pub fn milnor_duality_check(table: &MilnorTable, d: usize) -> bool {
    let shift = 3 * (d as i64 - 1);
    let sorted = |v: &[i64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    let m = &table.modules;
    sorted(&m[3]) == dual(&m[0], shift) && sorted(&m[2]) == dual(&m[1], shift)
}
