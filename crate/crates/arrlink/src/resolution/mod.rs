//! Graded free resolutions of homogeneous ideals, kept as multisets of
//! twists, and the rules that carry them through arrangement operations.
//!
//! A resolution `0 <- I <- F_1 <- F_2 <- ...` is stored as the list
//! `[F_1, F_2, ...]`, each module a sorted list of positive twists `t`
//! standing for summands `S(-t)`. Nothing here touches polynomials: every
//! rule is bookkeeping on twists, and the oracle module is what checks the
//! resulting numbers against actual ideals.

mod builder;
mod closed_forms;

pub use builder::{build_recursive, BuildResult, BuildStep};
pub use closed_forms::{
    connected_pencils_residual,
    disconnected_jacobian, disconnected_pencils_residual, disconnected_pencils_top, jacobian_and_milnor_from_sat,
    milnor_duality_check, three_pencils_tables, JacobianTables, MilnorTable, PencilTables,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::poly::{count_monomials, LinearForm};

/// What a resolution resolves and which rule produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionMeta {
    /// Short tag such as `residual`, `top`, `jacobian`, `saturation`.
    pub object: String,
    /// Number of hyperplanes of the arrangement.
    pub d: usize,
    /// Name of the rule that produced the table.
    pub rule: String,
}

/// A graded free resolution of an ideal, `modules[0]` being the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    modules: Vec<Vec<i64>>,
    meta: ResolutionMeta,
}

impl FreeResolution {
    /// Builds a resolution after sorting each module and dropping empty
    /// trailing ones. The alternating rank sum must be one.
    pub fn new(object: &str, d: usize, rule: &str, modules: Vec<Vec<i64>>) -> Result<FreeResolution> {
        let mut modules: Vec<Vec<i64>> = modules
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m
            })
            .collect();
        while modules.last().is_some_and(Vec::is_empty) {
            modules.pop();
        }
        let alternating: i64 = modules
            .iter()
            .enumerate()
            .map(|(i, m)| if i % 2 == 0 { m.len() as i64 } else { -(m.len() as i64) })
            .sum();
        if alternating != 1 {
            return Err(Error::InvalidResolution(format!(
                "alternating rank sum is {alternating}, an ideal needs 1"
            )));
        }
        if modules.iter().flatten().any(|&t| t < 0) {
            return Err(Error::InvalidResolution("negative twist".into()));
        }
        Ok(FreeResolution {
            modules,
            meta: ResolutionMeta {
                object: object.into(),
                d,
                rule: rule.into(),
            },
        })
    }

    /// The unit ideal, `S` itself.
    pub fn unit(object: &str, d: usize) -> FreeResolution {
        FreeResolution::new(object, d, "unit ideal", vec![vec![0]]).expect("valid")
    }

    /// A complete intersection of forms of degrees `a` and `b`.
    pub fn complete_intersection(object: &str, d: usize, a: i64, b: i64) -> FreeResolution {
        FreeResolution::new(object, d, "complete intersection", vec![vec![a, b], vec![a + b]]).expect("valid")
    }

    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }

    /// `F_i` with `i` starting at 1; empty past the length.
    pub fn module(&self, i: usize) -> &[i64] {
        assert!(i >= 1, "modules are numbered from 1");
        self.modules.get(i - 1).map_or(&[], Vec::as_slice)
    }

    pub fn generators(&self) -> &[i64] {
        self.module(1)
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn meta(&self) -> &ResolutionMeta {
        &self.meta
    }

    /// Whether the resolved ideal is Cohen-Macaulay of codimension two, that
    /// is, the resolution has length at most two.
    pub fn is_cm(&self) -> bool {
        self.modules.len() <= 2
    }

    /// Same table with a different object tag and rule name.
    pub fn relabeled(mut self, object: &str, rule: &str) -> FreeResolution {
        self.meta.object = object.into();
        self.meta.rule = rule.into();
        self
    }

    /// All twists raised by `h`.
    pub fn shifted(&self, h: i64) -> FreeResolution {
        let mut out = self.clone();
        for m in &mut out.modules {
            for t in m.iter_mut() {
                *t += h;
            }
        }
        out
    }

    /// Whether the two tables agree module by module, ignoring metadata.
    pub fn same_betti(&self, other: &FreeResolution) -> bool {
        self.modules == other.modules
    }

    /// Whether some twist occurs in two consecutive modules, the numerical
    /// sign of a possibly non-minimal resolution.
    pub fn possibly_non_minimal(&self) -> bool {
        self.modules
            .windows(2)
            .any(|w| w[0].iter().any(|t| w[1].binary_search(t).is_ok()))
    }

    pub fn betti_table(&self) -> BettiTable {
        BettiTable::from_resolution(self)
    }

    /// Castelnuovo-Mumford regularity of the ideal: `max(t - i + 1)` over
    /// twists `t` of `F_i`.
    pub fn regularity(&self) -> i64 {
        regularity(self)
    }

    /// `h_{S/I}(j)` for `j = 0..=upto` in a polynomial ring with `nvars`
    /// variables.
    pub fn hilbert_function(&self, nvars: usize, upto: usize) -> Vec<i64> {
        hilbert_from_resolution(self, nvars, upto)
    }

    fn with_modules(&self, modules: Vec<Vec<i64>>, object: &str, rule: &str) -> Result<FreeResolution> {
        FreeResolution::new(object, self.meta.d, rule, modules)
    }
}

impl fmt::Display for FreeResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        for m in self.modules.iter().rev() {
            write!(f, " -> {}", render_module(m))?;
        }
        write!(f, " -> {} -> 0", self.meta.object)
    }
}

/// `S(-3)^2 + S(-4)` style rendering of a graded free module.
pub fn render_module(twists: &[i64]) -> String {
    if twists.is_empty() {
        return "0".into();
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &t in twists {
        *counts.entry(t).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&t, &c)| {
            let base = if t == 0 { "S".to_string() } else { format!("S(-{t})") };
            if c == 1 {
                base
            } else {
                format!("{base}^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl Serialize for FreeResolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            object: &'a str,
            d: usize,
            rule: &'a str,
            is_cm: bool,
            regularity: i64,
            modules: &'a [Vec<i64>],
        }
        Repr {
            object: &self.meta.object,
            d: self.meta.d,
            rule: &self.meta.rule,
            is_cm: self.is_cm(),
            regularity: self.regularity(),
            modules: &self.modules,
        }
        .serialize(s)
    }
}

/// Graded Betti numbers `beta_{i,j}`, with `i = 0` for the generators of the
/// ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_resolution(res: &FreeResolution) -> BettiTable {
        let mut table = BettiTable::default();
        for (i, m) in res.modules.iter().enumerate() {
            for &t in m {
                table.add(i, t, 1);
            }
        }
        table
    }

    pub fn add(&mut self, i: usize, j: i64, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_default() += count;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    /// `max(j - i)` over nonzero entries.
    pub fn regularity(&self) -> i64 {
        self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap_or(0)
    }

    /// The twists of each homological degree, for building a
    /// [`FreeResolution`].
    pub fn modules(&self) -> Vec<Vec<i64>> {
        let len = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut modules = vec![Vec::new(); len];
        for (&(i, j), &c) in &self.entries {
            modules[i].extend(std::iter::repeat(j).take(c));
        }
        modules
    }

    /// Macaulay-style grid: columns are homological degrees, rows are
    /// `j - i`.
    pub fn to_text(&self) -> String {
        if self.entries.is_empty() {
            return "(zero table)\n".into();
        }
        let cols = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap_or(0);
        let hi = self.regularity();
        let mut totals = vec![0usize; cols];
        for (&(i, _), &c) in &self.entries {
            totals[i] += c;
        }
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = self
            .entries
            .values()
            .chain(totals.iter())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.to_string().len());
        let label = format!("{hi}").len().max(format!("{lo}").len()).max(5) + 1;
        let mut out = String::new();
        out.push_str(&format!("{:>label$}", ""));
        for i in 0..cols {
            out.push_str(&format!(" {:>width$}", i));
        }
        out.push('\n');
        out.push_str(&format!("{:>label$}", "total:"));
        for t in &totals {
            out.push_str(&format!(" {:>width$}", t));
        }
        out.push('\n');
        for row in lo..=hi {
            out.push_str(&format!("{:>label$}", format!("{row}:")));
            for i in 0..cols {
                out.push_str(&format!(" {:>width$}", cell(self.get(i, row + i as i64))));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: i64,
            count: usize,
        }
        let list: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&(i, j), &count)| Entry { i, j, count })
            .collect();
        list.serialize(s)
    }
}

/// Regularity of the ideal resolved by `res`.
pub fn regularity(res: &FreeResolution) -> i64 {
    res.modules
        .iter()
        .enumerate()
        .flat_map(|(k, m)| m.iter().map(move |&t| t - k as i64))
        .max()
        .unwrap_or(0)
}

/// Hilbert function of `S/I` from a resolution of `I`, for `j = 0..=upto`.
pub fn hilbert_from_resolution(res: &FreeResolution, nvars: usize, upto: usize) -> Vec<i64> {
    (0..=upto as i64)
        .map(|j| {
            let mut h = count_monomials(j, nvars) as i64;
            for (k, m) in res.modules.iter().enumerate() {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                for &t in m {
                    h += sign * count_monomials(j - t, nvars) as i64;
                }
            }
            h
        })
        .collect()
}

/// The resolution of `q * a + (p)` from that of `a`, where `q` has degree
/// `h`, `p` in `a` has degree `e`, and `(q, p)` is a regular sequence.
///
/// When `p` is part of a minimal generating set of `a` it replaces one
/// generator of degree `e`; otherwise it is a new generator and brings the
/// Koszul syzygy of degree `e + h`.
pub fn bdl_update(res: &FreeResolution, h: i64, e: i64, p_is_min_gen: bool) -> Result<FreeResolution> {
    if h < 1 {
        return Err(Error::InvalidArgument(
            "basic double link needs a form q of positive degree".into(),
        ));
    }
    let mut modules = res.modules.clone();
    if p_is_min_gen {
        let first = &mut modules[0];
        let pos = first.iter().position(|&t| t == e).ok_or(Error::NotMinimalGenerator(e))?;
        first.remove(pos);
    }
    for m in &mut modules {
        for t in m.iter_mut() {
            *t += h;
        }
    }
    modules[0].push(e);
    if !p_is_min_gen {
        if modules.len() < 2 {
            modules.push(Vec::new());
        }
        modules[1].push(e + h);
    }
    let rule = if p_is_min_gen {
        "basic double link, p a minimal generator"
    } else {
        "basic double link, p a new generator"
    };
    res.with_modules(modules, &res.meta.object, rule)
}

/// Residual after adding a hyperplane through no flat of an arrangement of
/// `d` hyperplanes. The new generator is `f_A`, never minimal since the
/// residual is generated in degree at most `d - 1`.
pub fn add_generic_hyperplane(res_r: &FreeResolution, d: usize) -> Result<FreeResolution> {
    let mut out = bdl_update(res_r, 1, d as i64, false)?;
    out.meta.d = d + 1;
    out.meta.rule = "generic hyperplane added".into();
    Ok(out)
}

/// Residual after adding a hyperplane `h` through at most one flat of `a`,
/// given the resolution of the residual of `a`. The degree of the new
/// generator is `|A ∩ H|`.
pub fn add_almost_generic(
    a: &Arrangement,
    h: &LinearForm,
    res_r: &FreeResolution,
    p_is_min_gen: bool,
) -> Result<FreeResolution> {
    let on = a.flats_on(h)?;
    if on.len() > 1 {
        return Err(Error::NotAlmostGeneric(on.len()));
    }
    let k = a.intersection_count(h)? as i64;
    let mut out = bdl_update(res_r, 1, k, p_is_min_gen)?;
    out.meta.d = a.d() + 1;
    out.meta.rule = if on.is_empty() {
        "generic hyperplane added".into()
    } else {
        format!("almost generic hyperplane added ({})", out.meta.rule)
    };
    Ok(out)
}

/// Resolution of `g * a + f * b` from those of `a` and `b`, where `f` and `g`
/// are the defining polynomials of the two arrangements, of degrees `deg_f`
/// and `deg_g`.
pub fn liaison_addition(
    res_f: &FreeResolution,
    res_g: &FreeResolution,
    deg_f: usize,
    deg_g: usize,
) -> Result<FreeResolution> {
    let (deg_f, deg_g) = (deg_f as i64, deg_g as i64);
    let len = res_f.len().max(res_g.len()).max(2);
    let mut modules = vec![Vec::new(); len];
    for (k, m) in res_f.modules.iter().enumerate() {
        modules[k].extend(m.iter().map(|t| t + deg_g));
    }
    for (k, m) in res_g.modules.iter().enumerate() {
        modules[k].extend(m.iter().map(|t| t + deg_f));
    }
    modules[1].push(deg_f + deg_g);
    FreeResolution::new(
        &res_f.meta.object,
        res_f.meta.d + res_g.meta.d,
        "liaison addition",
        modules,
    )
}

/// Checks the hypotheses of liaison addition for two arrangements in the
/// same space: no flat of one lies on a hyperplane of the other, and the
/// union is again an arrangement.
pub fn check_liaison_pair(a: &Arrangement, b: &Arrangement) -> Result<()> {
    for (x, y) in [(a, b), (b, a)] {
        for h in y.forms() {
            if x.forms().iter().any(|f| f.is_proportional(h)) {
                return Err(Error::Hypothesis("the arrangements share a hyperplane".into()));
            }
            if let Some(flat) = x.flats().iter().find(|p| p.lies_on(h)) {
                return Err(Error::Hypothesis(format!(
                    "a flat through hyperplanes {:?} of one arrangement lies on a hyperplane of the other",
                    flat.members()
                )));
            }
        }
    }
    Ok(())
}

/// The mapping cone passing between the residual and the top-dimensional
/// part of the Jacobian ideal, linked by `(f, df/dl)`.
///
/// For `[S(-d+1) + F, G]` the result is `[S(-d+1) + G*(-2d+1), F*(-2d+1)]`.
/// The rule is its own inverse.
fn link_through_derivative(res: &FreeResolution, d: usize, object: &str, rule: &str) -> Result<FreeResolution> {
    if !res.is_cm() {
        return Err(Error::NotCohenMacaulay(
            "the mapping cone needs a residual with a resolution of length at most two".into(),
        ));
    }
    let d = d as i64;
    let mut rest = res.generators().to_vec();
    let pos = rest.iter().position(|&t| t == d - 1).ok_or(Error::MissingTwist(d - 1))?;
    rest.remove(pos);
    let mut first = vec![d - 1];
    first.extend(res.module(2).iter().map(|t| 2 * d - 1 - t));
    let second: Vec<i64> = rest.iter().map(|t| 2 * d - 1 - t).collect();
    res.with_modules(vec![first, second], object, rule)
}

/// Resolution of the top-dimensional part of the Jacobian ideal from that of
/// the general residual of an arrangement of `d` hyperplanes.
pub fn residual_to_top(res_r: &FreeResolution, d: usize) -> Result<FreeResolution> {
    link_through_derivative(res_r, d, "top", "mapping cone from the residual")
}

/// Inverse of [`residual_to_top`].
pub fn top_to_residual(res_top: &FreeResolution, d: usize) -> Result<FreeResolution> {
    link_through_derivative(res_top, d, "residual", "mapping cone from the top part")
}
