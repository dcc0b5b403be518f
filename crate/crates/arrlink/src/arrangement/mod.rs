//! Hyperplane arrangements and their codimension-two intersection lattice.
//!
//! An [`Arrangement`] is an ordered list of pairwise non-proportional linear
//! forms in `n + 1` variables. Building one computes the flats `S(A)`: every
//! codimension-two subspace cut out by two of the hyperplanes, together with
//! all hyperplanes that contain it. The purely combinatorial part of that data
//! lives in [`Lattice`], which is also constructible on its own for
//! arrangements that have no model over the rationals.

mod families;
mod io;

pub use families::{make_family, FamilySpec, PencilCase};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Rational};
use crate::poly::{self, LinearForm, Poly};

/// A codimension-two flat of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Reduced row echelon form of the two linear equations of the flat.
    key: [Vec<Rational>; 2],
    members: Vec<usize>,
}

impl Flat {
    fn from_pair(a: &LinearForm, b: &LinearForm) -> Flat {
        let n1 = a.nvars();
        let m = Matrix::from_rows(n1, &[a.coeffs().to_vec(), b.coeffs().to_vec()])
            .expect("forms of equal length");
        let (rows, _) = linalg::rref(&m);
        let [r0, r1]: [Vec<Rational>; 2] = rows.try_into().expect("two independent forms");
        Flat {
            key: [r0, r1],
            members: Vec::new(),
        }
    }

    /// The codimension-two subspace cut out by two forms, with no member
    /// hyperplanes attached. Used to describe subspaces that do not come from
    /// an arrangement.
    pub fn from_equations(a: &LinearForm, b: &LinearForm) -> Result<Flat> {
        if a.nvars() != b.nvars() {
            return Err(Error::Dimension("equations of different lengths".into()));
        }
        if a.is_proportional(b) {
            return Err(Error::InvalidArgument(
                "proportional forms do not cut out a codimension-two subspace".into(),
            ));
        }
        Ok(Flat::from_pair(a, b))
    }

    /// Canonical key: the two rows of the reduced echelon equation matrix.
    pub fn key(&self) -> &[Vec<Rational>; 2] {
        &self.key
    }

    /// Indices of the hyperplanes containing the flat, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The multiplicity `t_P`.
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    /// Two independent linear forms cutting out the flat.
    pub fn equations(&self) -> [LinearForm; 2] {
        self.key
            .clone()
            .map(|r| LinearForm::new(r).expect("echelon rows are nonzero"))
    }

    /// Whether the hyperplane `h` contains the flat.
    pub fn lies_on(&self, h: &LinearForm) -> bool {
        let mut rest: Vec<Rational> = h.coeffs().to_vec();
        for row in &self.key {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let c = rest[pivot].clone();
            if !c.is_zero() {
                for (r, x) in rest.iter_mut().zip(row) {
                    *r -= &c * x;
                }
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    /// For flats in the projective plane, the point itself (first nonzero
    /// coordinate one). Returns `None` in higher dimension.
    pub fn point(&self) -> Option<Vec<Rational>> {
        let [u, v] = &self.key;
        if u.len() != 3 {
            return None;
        }
        let cross = vec![
            &u[1] * &v[2] - &u[2] * &v[1],
            &u[2] * &v[0] - &u[0] * &v[2],
            &u[0] * &v[1] - &u[1] * &v[0],
        ];
        linalg::normalize(&cross)
    }
}

/// Combinatorial intersection data: the number of hyperplanes and, for each
/// codimension-two flat, the sorted list of hyperplanes through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    d: usize,
    flats: Vec<Vec<usize>>,
}

impl Lattice {
    /// Builds a lattice from member lists and checks that it is the lattice of
    /// a set of hyperplanes: every pair of hyperplanes lies in exactly one flat.
    pub fn new(d: usize, flats: Vec<Vec<usize>>) -> Result<Lattice> {
        let mut seen = BTreeSet::new();
        let mut flats: Vec<Vec<usize>> = flats
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        for members in &flats {
            if members.len() < 2 || members.iter().any(|&i| i >= d) {
                return Err(Error::InvalidArgument(format!(
                    "flat {members:?} is not a set of at least two of the {d} hyperplanes"
                )));
            }
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    if !seen.insert((i, j)) {
                        return Err(Error::InvalidArgument(format!(
                            "hyperplanes {i} and {j} meet in two different flats"
                        )));
                    }
                }
            }
        }
        if seen.len() != d * d.saturating_sub(1) / 2 {
            return Err(Error::InvalidArgument(
                "some pair of hyperplanes lies in no flat".into(),
            ));
        }
        flats.sort();
        let lattice = Lattice { d, flats };
        lattice.assert_identity();
        Ok(lattice)
    }

    /// The lattice of the Fermat arrangement `(x^k - y^k)(y^k - z^k)(z^k - x^k)`.
    ///
    /// With `w` a primitive k-th root of unity, hyperplanes `0..k` are
    /// `x = w^i y`, `k..2k` are `y = w^j z` and `2k..3k` are `z = w^m x`. The
    /// first two meet on the third exactly when `i + j + m = 0 mod k`.
    pub fn fermat(k: usize) -> Result<Lattice> {
        if k == 0 {
            return Err(Error::InvalidFamily("fermat needs k >= 1".into()));
        }
        if k == 1 {
            return Lattice::new(3, vec![vec![0, 1, 2]]);
        }
        let mut flats = vec![
            (0..k).collect::<Vec<_>>(),
            (k..2 * k).collect(),
            (2 * k..3 * k).collect(),
        ];
        for i in 0..k {
            for j in 0..k {
                let m = (2 * k - i - j) % k;
                flats.push(vec![i, k + j, 2 * k + m]);
            }
        }
        Lattice::new(3 * k, flats)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Member lists of the flats, in canonical order.
    pub fn flats(&self) -> &[Vec<usize>] {
        &self.flats
    }

    /// The flats as a set of member lists, independent of flat order.
    pub fn member_sets(&self) -> BTreeSet<Vec<usize>> {
        self.flats.iter().cloned().collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.flats.iter().map(Vec::len).collect()
    }

    /// Indices of flats of multiplicity at least three.
    pub fn triple_flats(&self) -> Vec<usize> {
        (0..self.flats.len())
            .filter(|&i| self.flats[i].len() >= 3)
            .collect()
    }

    /// Flats containing hyperplane `h`.
    pub fn flats_through(&self, h: usize) -> Vec<usize> {
        (0..self.flats.len())
            .filter(|&i| self.flats[i].binary_search(&h).is_ok())
            .collect()
    }

    /// `sum t_P (t_P - 1)`, which equals `d (d - 1)`.
    pub fn weighted_pair_count(&self) -> usize {
        self.flats.iter().map(|m| m.len() * (m.len() - 1)).sum()
    }

    fn assert_identity(&self) {
        assert_eq!(
            self.weighted_pair_count(),
            self.d * self.d.saturating_sub(1),
            "lattice identity failed"
        );
    }

    /// Lattice of the sub-arrangement formed by `subset` (given in the order
    /// that defines the new indexing).
    pub fn restrict_to(&self, subset: &[usize]) -> Lattice {
        let position: BTreeMap<usize, usize> =
            subset.iter().enumerate().map(|(k, &h)| (h, k)).collect();
        let flats = self
            .flats
            .iter()
            .filter_map(|members| {
                let inside: Vec<usize> = members.iter().filter_map(|h| position.get(h).copied()).collect();
                (inside.len() >= 2).then_some(inside)
            })
            .collect();
        Lattice::new(subset.len(), flats).expect("sub-lattice of a valid lattice")
    }

    /// Number of distinct codimension-two subspaces `H' ∩ H` for `H'` in the
    /// arrangement, when `H = hyperplane h` is added to the others. Here `h` is
    /// an index of this lattice and the count refers to the remaining ones.
    pub fn trace_count(&self, h: usize) -> usize {
        self.flats_through(h).len()
    }

    /// Structural class of the arrangement.
    pub fn classify(&self) -> ArrangementClass {
        classify(self)
    }
}

/// Structural class of an arrangement, determined by its lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum ArrangementClass {
    /// All hyperplanes through one flat.
    Concurrent { d: usize },
    /// All but one hyperplane through one flat (`d >= 4`).
    NearPencil { d: usize },
    /// Two flats of multiplicity `a` and `b` joined by a hyperplane, every
    /// hyperplane through one of them; `d = a + b - 1`.
    ConnectedTwoPencil { a: usize, b: usize },
    /// Three pencil centers and no other hyperplanes; `a`, `b`, `c` count the
    /// hyperplanes through each center other than the connecting ones.
    ThreePencils {
        case: PencilCase,
        a: usize,
        b: usize,
        c: usize,
    },
    /// Flats of multiplicity at least three, no hyperplane through two of
    /// them; `s` hyperplanes pass through none.
    DisconnectedPencils { multiplicities: Vec<usize>, s: usize },
    General { d: usize },
}

impl ArrangementClass {
    pub fn tag(&self) -> String {
        match self {
            ArrangementClass::Concurrent { .. } => "concurrent".into(),
            ArrangementClass::NearPencil { .. } => "near-pencil".into(),
            ArrangementClass::ConnectedTwoPencil { .. } => "connected-2-pencil".into(),
            ArrangementClass::ThreePencils { case, .. } => format!("three-pencils-case-{case}"),
            ArrangementClass::DisconnectedPencils { .. } => "disconnected-pencils".into(),
            ArrangementClass::General { .. } => "general".into(),
        }
    }
}

impl fmt::Display for ArrangementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementClass::Concurrent { d } | ArrangementClass::NearPencil { d } => {
                write!(f, "{} (d = {d})", self.tag())
            }
            ArrangementClass::ConnectedTwoPencil { a, b } => write!(f, "{} (a = {a}, b = {b})", self.tag()),
            ArrangementClass::ThreePencils { a, b, c, .. } => {
                write!(f, "{} (a = {a}, b = {b}, c = {c})", self.tag())
            }
            ArrangementClass::DisconnectedPencils { multiplicities, s } => {
                write!(f, "{} (t = {multiplicities:?}, s = {s})", self.tag())
            }
            ArrangementClass::General { d } => write!(f, "general (d = {d})"),
        }
    }
}

fn classify(lattice: &Lattice) -> ArrangementClass {
    let d = lattice.d;
    let mult = lattice.multiplicities();
    if d >= 2 && mult.contains(&d) {
        return ArrangementClass::Concurrent { d };
    }
    if d >= 4 && mult.contains(&(d - 1)) {
        return ArrangementClass::NearPencil { d };
    }
    let centers = lattice.triple_flats();
    if centers.is_empty() {
        return ArrangementClass::General { d };
    }
    // For every hyperplane, the centers it passes through.
    let on: Vec<Vec<usize>> = (0..d)
        .map(|h| {
            centers
                .iter()
                .copied()
                .filter(|&c| lattice.flats[c].binary_search(&h).is_ok())
                .collect()
        })
        .collect();
    let s = on.iter().filter(|c| c.is_empty()).count();
    let connecting: Vec<&Vec<usize>> = on.iter().filter(|c| c.len() >= 2).collect();

    if centers.len() == 2 && s == 0 && connecting.len() == 1 {
        let (a, b) = (mult[centers[0]], mult[centers[1]]);
        return ArrangementClass::ConnectedTwoPencil { a: a.min(b), b: a.max(b) };
    }
    if centers.len() == 3 && s == 0 {
        if let Some(class) = classify_three(lattice, &centers, &connecting) {
            return class;
        }
    }
    if connecting.is_empty() {
        let multiplicities = centers.iter().map(|&c| mult[c]).collect();
        return ArrangementClass::DisconnectedPencils { multiplicities, s };
    }
    ArrangementClass::General { d }
}

fn classify_three(lattice: &Lattice, centers: &[usize], connecting: &[&Vec<usize>]) -> Option<ArrangementClass> {
    let t = |c: usize| lattice.flats[c].len();
    let sorted3 = |mut v: [usize; 3]| {
        v.sort_unstable();
        v
    };
    if connecting.iter().any(|c| c.len() == 3) {
        if connecting.len() != 1 {
            return None;
        }
        let [a, b, c] = sorted3([t(centers[0]) - 1, t(centers[1]) - 1, t(centers[2]) - 1]);
        return Some(ArrangementClass::ThreePencils { case: PencilCase::IV, a, b, c });
    }
    match connecting.len() {
        0 => {
            let [a, b, c] = sorted3([t(centers[0]), t(centers[1]), t(centers[2])]);
            Some(ArrangementClass::ThreePencils { case: PencilCase::I, a, b, c })
        }
        1 => {
            let joined = connecting[0];
            let lone = *centers.iter().find(|c| !joined.contains(c))?;
            let (x, y) = (t(joined[0]) - 1, t(joined[1]) - 1);
            Some(ArrangementClass::ThreePencils {
                case: PencilCase::II,
                a: x.min(y),
                b: x.max(y),
                c: t(lone),
            })
        }
        2 => {
            let middle = *centers
                .iter()
                .find(|c| connecting[0].contains(c) && connecting[1].contains(c))?;
            let ends: Vec<usize> = centers.iter().copied().filter(|&c| c != middle).collect();
            let (x, y) = (t(ends[0]) - 1, t(ends[1]) - 1);
            Some(ArrangementClass::ThreePencils {
                case: PencilCase::III,
                a: x.min(y),
                b: t(middle) - 2,
                c: x.max(y),
            })
        }
        3 => {
            let [a, b, c] = sorted3([t(centers[0]) - 2, t(centers[1]) - 2, t(centers[2]) - 2]);
            Some(ArrangementClass::ThreePencils { case: PencilCase::V, a, b, c })
        }
        _ => None,
    }
}

/// A hyperplane arrangement in projective `n`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    forms: Vec<LinearForm>,
    flats: Vec<Flat>,
    lattice: Lattice,
}

impl Arrangement {
    /// Builds an arrangement, rejecting proportional forms and computing the
    /// intersection lattice.
    pub fn new(n: usize, forms: Vec<LinearForm>) -> Result<Arrangement> {
        if forms.is_empty() {
            return Err(Error::InvalidArgument("an arrangement needs at least one hyperplane".into()));
        }
        if n < 1 {
            return Err(Error::InvalidArgument("ambient dimension must be at least 1".into()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != n + 1 {
                return Err(Error::Dimension(format!(
                    "form {i} has {} coefficients, expected {}",
                    f.nvars(),
                    n + 1
                )));
            }
            if let Some(j) = forms[..i].iter().position(|g| g.is_proportional(f)) {
                return Err(Error::ProportionalForms { first: j, second: i });
            }
        }
        let mut by_key: BTreeMap<[Vec<Rational>; 2], BTreeSet<usize>> = BTreeMap::new();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let flat = Flat::from_pair(&forms[i], &forms[j]);
                let entry = by_key.entry(flat.key).or_default();
                entry.insert(i);
                entry.insert(j);
            }
        }
        let flats: Vec<Flat> = by_key
            .into_iter()
            .map(|(key, members)| Flat {
                key,
                members: members.into_iter().collect(),
            })
            .collect();
        let lattice = Lattice {
            d: forms.len(),
            flats: flats.iter().map(|f| f.members.clone()).collect(),
        };
        lattice.assert_identity();
        Ok(Arrangement { n, forms, flats, lattice })
    }

    /// Convenience constructor from integer coefficient rows.
    pub fn from_i64(n: usize, rows: &[&[i64]]) -> Result<Arrangement> {
        let forms = rows
            .iter()
            .map(|r| LinearForm::from_i64(r))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(n, forms)
    }

    /// Ambient projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    /// Number of hyperplanes.
    pub fn d(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    /// The flats `S(A)`, sorted by canonical key. Empty when `d < 2`.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The defining polynomial `f_A`, product of all forms.
    pub fn defining_polynomial(&self) -> Poly {
        poly::product(&self.forms)
    }

    /// Product of the forms through a flat (the local polynomial `g_P`).
    pub fn flat_polynomial(&self, flat: &Flat) -> Poly {
        let members: Vec<LinearForm> = flat.members.iter().map(|&i| self.forms[i].clone()).collect();
        poly::product(&members)
    }

    pub fn classify(&self) -> ArrangementClass {
        self.lattice.classify()
    }

    fn check_new(&self, h: &LinearForm) -> Result<()> {
        if h.nvars() != self.nvars() {
            return Err(Error::Dimension(format!(
                "hyperplane has {} coefficients, expected {}",
                h.nvars(),
                self.nvars()
            )));
        }
        if self.forms.iter().any(|f| f.is_proportional(h)) {
            return Err(Error::HyperplaneInArrangement);
        }
        Ok(())
    }

    /// Indices of the flats contained in the hyperplane `h`.
    pub fn flats_on(&self, h: &LinearForm) -> Result<Vec<usize>> {
        self.check_new(h)?;
        Ok((0..self.flats.len()).filter(|&i| self.flats[i].lies_on(h)).collect())
    }

    /// Whether `h` contains no flat.
    pub fn is_generic_hyperplane(&self, h: &LinearForm) -> Result<bool> {
        Ok(self.flats_on(h)?.is_empty())
    }

    /// Whether `h` contains at most one flat.
    pub fn is_almost_generic(&self, h: &LinearForm) -> Result<bool> {
        Ok(self.flats_on(h)?.len() <= 1)
    }

    /// `|A ∩ H|`: the number of distinct subspaces `H' ∩ H` with `H'` in the
    /// arrangement.
    pub fn intersection_count(&self, h: &LinearForm) -> Result<usize> {
        self.check_new(h)?;
        let keys: BTreeSet<[Vec<Rational>; 2]> =
            self.forms.iter().map(|f| Flat::from_pair(f, h).key).collect();
        Ok(keys.len())
    }

    /// The arrangement with `h` appended.
    pub fn with_hyperplane(&self, h: LinearForm) -> Result<Arrangement> {
        self.check_new(&h)?;
        let mut forms = self.forms.clone();
        forms.push(h);
        Arrangement::new(self.n, forms)
    }

    /// The arrangement without hyperplane `i`.
    pub fn without(&self, i: usize) -> Result<Arrangement> {
        if i >= self.d() {
            return Err(Error::InvalidArgument(format!("no hyperplane {i}")));
        }
        let mut forms = self.forms.clone();
        forms.remove(i);
        Arrangement::new(self.n, forms)
    }

    /// The sub-arrangement of the given hyperplanes, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        let forms = indices
            .iter()
            .map(|&i| {
                self.forms
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("no hyperplane {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.n, forms)
    }

    /// Restriction to a hyperplane `h` in general position with respect to
    /// the lattice (it contains no flat and merges none).
    ///
    /// Coordinates on `h` are the variables other than the first one with a
    /// nonzero coefficient in `h` (which is eliminated). The flats of the result
    /// are in bijection with those of `self`, with the same multiplicities.
    pub fn restrict(&self, h: &LinearForm) -> Result<Arrangement> {
        if self.n < 3 {
            return Err(Error::InvalidArgument(
                "restriction is only defined here for n >= 3".into(),
            ));
        }
        if !self.flats_on(h)?.is_empty() {
            return Err(Error::NonGenericRestriction);
        }
        let hc = h.coeffs();
        let k = hc.iter().position(|c| !c.is_zero()).expect("nonzero form");
        // On h: x_k = -sum_{i != k} h_i x_i (h_k = 1 after normalization).
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let c = f.coeffs();
                let coeffs: Vec<Rational> = (0..self.nvars())
                    .filter(|&i| i != k)
                    .map(|i| &c[i] - &c[k] * &hc[i])
                    .collect();
                LinearForm::new(coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        let restricted = Arrangement::new(self.n - 1, forms).map_err(|_| Error::NonGenericRestriction)?;
        // h may still meet three hyperplanes in a codimension-two subspace of
        // h, merging flats; that shows up as a change of lattice.
        if restricted.lattice.member_sets() != self.lattice.member_sets() {
            return Err(Error::NonGenericRestriction);
        }
        Ok(restricted)
    }
}
