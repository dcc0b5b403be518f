//! Brute-force ground truth for line arrangements, one graded piece at a time.
//!
//! Ideals given by generators are spanned degreewise by monomial multiples of
//! the generators. Saturated ideals of points are intersections of *groups*:
//! a group is a zero-dimensional ideal known both by generators and by the
//! linear conditions its local components impose on forms (see [`local`]).
//! Before a group is used in some degree the two descriptions are checked
//! against each other there: every condition kills every multiple exactly,
//! and the ranks add up to the dimension of the piece.
//!
//! Ranks modulo word-sized primes are only ever used as lower bounds, paired
//! with an exact upper bound; every number the oracle reports is exact over
//! the rationals.

mod local;
mod predict;
mod verify;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::iter;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{Arrangement, Flat};
use crate::error::{Error, Result};
use crate::linalg::{self, modular, Rational};
use crate::poly::{count_monomials, directional_derivative, LinearForm, Monomial, MonomialIndex, Poly};
use crate::residual::{self, GeneralForm};
use crate::resolution::FreeResolution;
use local::LocalComponent;

pub use predict::{builder_decision, predict, Prediction};
pub use verify::{Check, VerificationReport};

/// Largest number of lines accepted unless configured otherwise.
pub const DEFAULT_CAP: usize = 12;

/// How many primes a certification may try before giving up.
const PRIME_ATTEMPTS: usize = 3;

/// Base field used for the fast modular filters. Reported numbers are exact
/// in both modes; the prime mode only fixes the first prime tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Rational,
    Prime(u64),
}

fn n_j(j: usize) -> usize {
    count_monomials(j as i64, 3) as usize
}

/// A nonzero homogeneous form with integer coefficients.
#[derive(Clone, Debug)]
struct IntForm {
    degree: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl IntForm {
    fn new(p: &Poly) -> Result<IntForm> {
        if p.nvars() != 3 {
            return Err(Error::Dimension(format!("the oracle works in 3 variables, got {}", p.nvars())));
        }
        let degree = p.degree().ok_or(Error::ZeroForm)? as usize;
        if !p.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("{p} is not homogeneous")));
        }
        let coeffs: Vec<Rational> = p.terms().map(|(_, c)| c.clone()).collect();
        let ints = linalg::primitive_integer_row(&coeffs);
        let terms = p.terms().map(|(m, _)| m.clone()).zip(ints).collect();
        Ok(IntForm { degree, terms })
    }

    /// Dense coefficient row of `m * self`.
    fn shifted_row(&self, m: &Monomial, index: &MonomialIndex) -> Vec<BigInt> {
        let mut row = vec![BigInt::zero(); index.len()];
        for (t, c) in &self.terms {
            row[index.position(&t.mul(m)).expect("degree matches")] = c.clone();
        }
        row
    }

    /// `lambda(m * self)` for a functional on the degree of `m * self`.
    fn pair(&self, m: &Monomial, lambda: &[BigInt], index: &MonomialIndex) -> BigInt {
        self.terms
            .iter()
            .map(|(t, c)| c * &lambda[index.position(&t.mul(m)).expect("degree matches")])
            .sum()
    }
}

fn multiples(gens: &[IntForm], j: usize, index: &MonomialIndex) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| g.degree <= j) {
        for m in MonomialIndex::new((j - g.degree) as u32, 3).basis() {
            rows.push(g.shifted_row(m, index));
        }
    }
    rows
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn to_poly(row: &[BigInt], index: &MonomialIndex) -> Poly {
    Poly::from_terms(
        3,
        index
            .basis()
            .iter()
            .zip(row)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))),
    )
}

/// A zero-dimensional saturated ideal with both descriptions.
struct Group {
    label: String,
    components: Vec<LocalComponent>,
    generators: Vec<IntForm>,
    certified: Mutex<HashSet<usize>>,
}

impl Group {
    fn new(label: String, components: Vec<LocalComponent>, generators: &[Poly]) -> Result<Group> {
        Ok(Group {
            label,
            components,
            generators: generators.iter().map(IntForm::new).collect::<Result<_>>()?,
            certified: Mutex::new(HashSet::new()),
        })
    }

    fn functionals(&self, j: usize) -> Vec<Vec<BigInt>> {
        self.components
            .iter()
            .flat_map(|c| c.functionals(j).iter().cloned().collect::<Vec<_>>())
            .collect()
    }

    fn certify(&self, j: usize, primes: &[u64]) -> Result<()> {
        if self.certified.lock().expect("certificate lock").contains(&j) {
            return Ok(());
        }
        let index = MonomialIndex::new(j as u32, 3);
        let lambda = self.functionals(j);
        for g in self.generators.iter().filter(|g| g.degree <= j) {
            for m in MonomialIndex::new((j - g.degree) as u32, 3).basis() {
                if lambda.iter().any(|l| !g.pair(m, l, &index).is_zero()) {
                    return Err(Error::Certification(format!(
                        "{}: a generator multiple violates a local condition in degree {j}",
                        self.label
                    )));
                }
            }
        }
        let mult = multiples(&self.generators, j, &index);
        for &p in primes {
            if modular::rank_mod_p(&mult, index.len(), p) + modular::rank_mod_p(&lambda, index.len(), p) == index.len() {
                self.certified.lock().expect("certificate lock").insert(j);
                return Ok(());
            }
        }
        Err(Error::Certification(format!(
            "{}: generators and local conditions disagree in degree {j}",
            self.label
        )))
    }
}

enum Kind {
    Generated,
    Saturated(Vec<Group>),
}

/// Data behind the computation of `beta_0` in one degree of a saturated ideal.
struct CSystem {
    /// Basis of the span of the conditions in the previous degree.
    basis: Vec<Vec<BigInt>>,
    rows: Vec<Vec<BigInt>>,
    /// Exact rank of `rows`.
    rank: usize,
}

#[derive(Default)]
struct Cache {
    annihilators: HashMap<usize, Arc<Vec<Vec<BigInt>>>>,
    dims: HashMap<usize, usize>,
    beta0: HashMap<usize, usize>,
    c_systems: HashMap<usize, Arc<CSystem>>,
}

/// A homogeneous ideal of `Q[x0, x1, x2]`, handled degree by degree.
pub struct GradedIdeal {
    name: String,
    generators: Vec<Poly>,
    int_generators: Vec<IntForm>,
    kind: Kind,
    saturated: bool,
    primes: Vec<u64>,
    cache: Mutex<Cache>,
}

impl std::fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedIdeal")
            .field("name", &self.name)
            .field("generators", &self.generators.len())
            .field("saturated", &self.saturated)
            .finish()
    }
}

impl GradedIdeal {
    fn build(name: &str, generators: Vec<Poly>, kind: Kind, saturated: bool, primes: Vec<u64>) -> Result<GradedIdeal> {
        let generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(GradedIdeal {
            name: name.into(),
            int_generators: generators.iter().map(IntForm::new).collect::<Result<_>>()?,
            generators,
            kind,
            saturated,
            primes,
            cache: Mutex::new(Cache::default()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Known generators. A saturated ideal built from groups may need more
    /// generators than listed here in high degrees.
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Whether the ideal is known to be saturated.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Sum of the local colengths, for ideals described by local conditions.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Generated => None,
            Kind::Saturated(groups) => Some(
                groups
                    .iter()
                    .flat_map(|g| g.components.iter())
                    .map(LocalComponent::colength)
                    .sum(),
            ),
        }
    }

    /// Rows spanning the annihilator of `[I]_j` in the dual of `[S]_j`.
    fn annihilator(&self, j: usize) -> Result<Arc<Vec<Vec<BigInt>>>> {
        if let Some(a) = self.cache.lock().expect("cache lock").annihilators.get(&j) {
            return Ok(a.clone());
        }
        let rows = match &self.kind {
            Kind::Saturated(groups) => {
                let mut rows = Vec::new();
                for g in groups {
                    g.certify(j, &self.primes)?;
                    rows.extend(g.functionals(j));
                }
                rows
            }
            Kind::Generated => {
                let index = MonomialIndex::new(j as u32, 3);
                linalg::kernel_integer(multiples(&self.int_generators, j, &index), index.len())
            }
        };
        let rows = Arc::new(rows);
        self.cache.lock().expect("cache lock").annihilators.insert(j, rows.clone());
        Ok(rows)
    }

    /// `dim [I]_j`.
    pub fn dim(&self, j: usize) -> Result<usize> {
        if let Some(&v) = self.cache.lock().expect("cache lock").dims.get(&j) {
            return Ok(v);
        }
        let n = n_j(j);
        let value = match &self.kind {
            Kind::Saturated(_) => n - exact_rank(&self.annihilator(j)?, n),
            Kind::Generated => {
                let index = MonomialIndex::new(j as u32, 3);
                exact_rank(&multiples(&self.int_generators, j, &index), n)
            }
        };
        self.cache.lock().expect("cache lock").dims.insert(j, value);
        Ok(value)
    }

    /// `h_{S/I}(j)` for `j = 0..=upto`.
    pub fn hilbert_function(&self, upto: usize) -> Result<Vec<usize>> {
        (0..=upto).map(|j| Ok(n_j(j) - self.dim(j)?)).collect()
    }

    /// A basis of `[I]_j` as polynomials with integer coefficients.
    pub fn basis(&self, j: usize) -> Result<Vec<Poly>> {
        let index = MonomialIndex::new(j as u32, 3);
        let rows = match &self.kind {
            Kind::Saturated(_) => linalg::kernel_integer(self.annihilator(j)?.to_vec(), index.len()),
            Kind::Generated => {
                let mult = multiples(&self.int_generators, j, &index);
                let keep = modular::independent_rows(&mult, index.len(), self.primes[0]);
                if keep.len() == self.dim(j)? {
                    keep.into_iter().map(|i| mult[i].clone()).collect()
                } else {
                    let (rows, _, _) = linalg::rref_integer(mult, index.len());
                    rows
                }
            }
        };
        Ok(rows.iter().map(|r| to_poly(r, &index)).collect())
    }

    /// Rows spanning `[I]_j` (not necessarily independent).
    fn spanning_rows(&self, j: usize) -> Result<Vec<Vec<BigInt>>> {
        let index = MonomialIndex::new(j as u32, 3);
        Ok(match &self.kind {
            Kind::Saturated(_) => linalg::kernel_integer(self.annihilator(j)?.to_vec(), index.len()),
            Kind::Generated => multiples(&self.int_generators, j, &index),
        })
    }

    /// Whether the homogeneous polynomial `p` lies in the ideal.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let f = IntForm::new(p)?;
        let j = f.degree;
        let index = MonomialIndex::new(j as u32, 3);
        let row = f.shifted_row(&Monomial::one(3), &index);
        match &self.kind {
            Kind::Saturated(_) => Ok(self.annihilator(j)?.iter().all(|l| dot(l, &row).is_zero())),
            Kind::Generated => {
                let mut mult = multiples(&self.int_generators, j, &index);
                let base = self.dim(j)?;
                mult.push(row);
                Ok(exact_rank(&mult, index.len()) == base)
            }
        }
    }

    /// Number `beta_{0,j}` of minimal generators of degree `j`.
    pub fn beta0(&self, j: usize) -> Result<usize> {
        if let Some(&v) = self.cache.lock().expect("cache lock").beta0.get(&j) {
            return Ok(v);
        }
        let value = match &self.kind {
            Kind::Generated => {
                let index = MonomialIndex::new(j as u32, 3);
                let lower: Vec<IntForm> = self.int_generators.iter().filter(|g| g.degree < j).cloned().collect();
                self.dim(j)? - exact_rank(&multiples(&lower, j, &index), index.len())
            }
            Kind::Saturated(_) => self.beta0_saturated(j)?,
        };
        self.cache.lock().expect("cache lock").beta0.insert(j, value);
        Ok(value)
    }

    /// `j -> beta_{0,j}` for the degrees up to `upto` with a nonzero count.
    pub fn minimal_generator_counts(&self, upto: usize) -> Result<BTreeMap<usize, usize>> {
        let mut out = BTreeMap::new();
        for j in 0..=upto {
            let b = self.beta0(j)?;
            if b > 0 {
                out.insert(j, b);
            }
        }
        Ok(out)
    }

    /// `h(j) - 3h(j-1) + 3h(j-2) - h(j-3)` for `h = h_{S/I}`, zero below 0.
    fn third_difference(&self, j: usize) -> Result<i64> {
        let mut c = 0i64;
        for (k, w) in [1i64, -3, 3, -1].into_iter().enumerate() {
            if j >= k {
                c += w * (n_j(j - k) - self.dim(j - k)?) as i64;
            }
        }
        Ok(c)
    }

    /// The equations for the functionals on `[S]_j` that kill `[S]_1 [I]_{j-1}`.
    ///
    /// Such a functional is determined by its contractions with the three
    /// variables, each a combination `sum_r c_{i,r} w_r` of a basis `w` of the
    /// conditions in degree `j - 1`; the rows express that the contractions
    /// agree on every monomial.
    fn c_system(&self, j: usize) -> Result<Arc<CSystem>> {
        if let Some(c) = self.cache.lock().expect("cache lock").c_systems.get(&j) {
            return Ok(c.clone());
        }
        let prev = self.annihilator(j - 1)?;
        let n_prev = n_j(j - 1);
        let rho = n_prev - self.dim(j - 1)?;
        let mut basis = None;
        for &p in &self.primes {
            let idx = modular::independent_rows(&prev, n_prev, p);
            if idx.len() == rho {
                basis = Some(idx.into_iter().map(|i| prev[i].clone()).collect::<Vec<_>>());
                break;
            }
        }
        let basis = basis.ok_or_else(|| Error::Certification(format!("{}: no basis of conditions found in degree {}", self.name, j - 1)))?;
        let lower = MonomialIndex::new(j as u32 - 1, 3);
        let upper = MonomialIndex::new(j as u32, 3);
        let mut rows = Vec::new();
        for m in upper.basis() {
            let e = m.exponents();
            let divisors: Vec<usize> = (0..3).filter(|&i| e[i] > 0).collect();
            let pos = |i: usize| {
                let mut f = e.to_vec();
                f[i] -= 1;
                lower.position(&Monomial::new(f)).expect("monomial")
            };
            let i0 = divisors[0];
            for &k in &divisors[1..] {
                let mut row = vec![BigInt::zero(); 3 * rho];
                for (r, w) in basis.iter().enumerate() {
                    row[i0 * rho + r] = w[pos(i0)].clone();
                    row[k * rho + r] = -w[pos(k)].clone();
                }
                rows.push(row);
            }
        }
        let n = n_j(j);
        let rho_j = n - self.dim(j)?;
        let lower_bound = (-self.third_difference(j)?).max(0) as usize;
        let rank_p = modular::rank_mod_p(&rows, 3 * rho, self.primes[0]);
        // beta_0 = 3 rho - rho_j - rank, and rank_p <= rank.
        let upper_bound = 3 * rho - rho_j - rank_p;
        let rank = if upper_bound == lower_bound {
            rank_p
        } else {
            exact_rank(&rows, 3 * rho)
        };
        let sys = Arc::new(CSystem { basis, rows, rank });
        self.cache.lock().expect("cache lock").c_systems.insert(j, sys.clone());
        Ok(sys)
    }

    fn beta0_saturated(&self, j: usize) -> Result<usize> {
        if j == 0 {
            return self.dim(0);
        }
        if self.dim(j - 1)? == n_j(j - 1) {
            return Ok(0);
        }
        if self.dim(j - 1)? == 0 && n_j(j - 1) > 0 {
            // Nothing to multiply: every element of degree j is new.
            return self.dim(j);
        }
        let sys = self.c_system(j)?;
        let rho = sys.basis.len();
        let rho_j = n_j(j) - self.dim(j)?;
        Ok(3 * rho - rho_j - sys.rank)
    }

    /// Whether `p` is a minimal generator, that is `p ∈ I` but
    /// `p ∉ [S]_1 [I]_{deg p - 1}`.
    pub fn is_minimal_generator(&self, p: &Poly) -> Result<bool> {
        if p.is_zero() || !self.contains(p)? {
            return Ok(false);
        }
        let f = IntForm::new(p)?;
        let j = f.degree;
        if self.beta0(j)? == 0 {
            return Ok(false);
        }
        let index = MonomialIndex::new(j as u32, 3);
        let row = f.shifted_row(&Monomial::one(3), &index);
        match &self.kind {
            Kind::Generated => {
                let lower: Vec<IntForm> = self.int_generators.iter().filter(|g| g.degree < j).cloned().collect();
                let mut rows = multiples(&lower, j, &index);
                let base = exact_rank(&rows, index.len());
                rows.push(row);
                if modular::rank_mod_p(&rows, index.len(), self.primes[0]) > base {
                    return Ok(true);
                }
                Ok(exact_rank(&rows, index.len()) > base)
            }
            Kind::Saturated(_) => {
                if j == 0 || self.dim(j - 1)? == 0 {
                    return Ok(true);
                }
                let sys = self.c_system(j)?;
                let rho = sys.basis.len();
                let lower = MonomialIndex::new(j as u32 - 1, 3);
                // The pairing of p with the functional attached to c.
                let mut extra = vec![BigInt::zero(); 3 * rho];
                for (m, coef) in index.basis().iter().zip(&row) {
                    if coef.is_zero() {
                        continue;
                    }
                    let e = m.exponents();
                    let i0 = (0..3).find(|&i| e[i] > 0).expect("positive degree");
                    let mut f = e.to_vec();
                    f[i0] -= 1;
                    let at = lower.position(&Monomial::new(f)).expect("monomial");
                    for (r, w) in sys.basis.iter().enumerate() {
                        extra[i0 * rho + r] += coef * &w[at];
                    }
                }
                let mut rows = sys.rows.clone();
                rows.push(extra);
                if modular::rank_mod_p(&rows, 3 * rho, self.primes[0]) > sys.rank {
                    return Ok(true);
                }
                Ok(exact_rank(&rows, 3 * rho) > sys.rank)
            }
        }
    }
}

fn exact_rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    linalg::rank_multimodular(rows, cols)
}

/// Degrees where the colon and the target ideal disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonComparison {
    pub upto: usize,
    pub mismatches: Vec<usize>,
}

impl ColonComparison {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The brute-force oracle, restricted to line arrangements with at most
/// `cap` lines.
#[derive(Clone, Debug)]
pub struct Oracle {
    cap: usize,
    field: Field,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle {
            cap: DEFAULT_CAP,
            field: Field::Rational,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Oracle {
        self.cap = cap;
        self
    }

    pub fn with_field(mut self, field: Field) -> Result<Oracle> {
        if let Field::Prime(p) = field {
            if !(p > 1 << 20 && p < 1 << 32 && modular::is_prime(p)) {
                return Err(Error::InvalidArgument(format!(
                    "{p} is not a prime between 2^20 and 2^32"
                )));
            }
        }
        self.field = field;
        Ok(self)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn primes(&self) -> Vec<u64> {
        let first = match self.field {
            Field::Rational => modular::DEFAULT_PRIME,
            Field::Prime(p) => p,
        };
        iter::once(first)
            .chain(modular::primes().filter(|&p| p != first))
            .take(PRIME_ATTEMPTS)
            .collect()
    }

    /// Refuses arrangements outside the oracle's scope.
    pub fn admit(&self, a: &Arrangement) -> Result<()> {
        if a.n() != 2 {
            return Err(Error::InvalidArgument(format!(
                "the oracle handles line arrangements only, got an arrangement in P^{}",
                a.n()
            )));
        }
        if a.d() > self.cap {
            return Err(Error::OracleCap(format!(
                "{} lines, the oracle is configured for at most {}",
                a.d(),
                self.cap
            )));
        }
        Ok(())
    }

    /// An ideal given by generators.
    pub fn generated(&self, name: &str, generators: Vec<Poly>) -> Result<GradedIdeal> {
        GradedIdeal::build(name, generators, Kind::Generated, false, self.primes())
    }

    /// The ideal `(f, g)` of two forms without common factor, which is
    /// saturated.
    pub fn complete_intersection(&self, f: &Poly, g: &Poly) -> Result<GradedIdeal> {
        let ideal = GradedIdeal::build("complete intersection", vec![f.clone(), g.clone()], Kind::Generated, false, self.primes())?;
        let (a, b) = (ideal.int_generators[0].degree, ideal.int_generators[1].degree);
        let h = ideal.hilbert_function(a + b)?;
        if h[a + b - 1] != a * b || h[a + b] != a * b {
            return Err(Error::Hypothesis(format!("{f} and {g} do not cut out {} points", a * b)));
        }
        Ok(GradedIdeal { saturated: true, ..ideal })
    }

    fn saturated(&self, name: &str, generators: Vec<Poly>, groups: Vec<Group>) -> Result<GradedIdeal> {
        GradedIdeal::build(name, generators, Kind::Saturated(groups), true, self.primes())
    }

    /// `Jac(f_A)`, generated by the three partial derivatives.
    pub fn jacobian_ideal(&self, a: &Arrangement) -> Result<GradedIdeal> {
        self.admit(a)?;
        let f = a.defining_polynomial();
        self.generated("jacobian", (0..3).map(|i| f.partial(i)).collect())
    }

    /// The top-dimensional part of the Jacobian ideal, the intersection over
    /// the flats of the complete intersections `Jac(g_P)`.
    pub fn top_part(&self, a: &Arrangement) -> Result<GradedIdeal> {
        self.admit(a)?;
        let mut groups = Vec::new();
        for (k, flat) in a.flats().iter().enumerate() {
            let point = flat_point(flat)?;
            let g = a.flat_polynomial(flat);
            let partials: Vec<Poly> = (0..3).map(|i| g.partial(i)).filter(|q| !q.is_zero()).collect();
            let comp = LocalComponent::new(&point, &partials)?;
            groups.push(Group::new(format!("Jac(g_P) at flat {k}"), vec![comp], &partials)?);
        }
        let f = a.defining_polynomial();
        self.saturated("top", (0..3).map(|i| f.partial(i)).collect(), groups)
    }

    /// The complete intersection `(f_A, df_A/dl)`.
    pub fn ci_ideal(&self, a: &Arrangement, l: &GeneralForm) -> Result<GradedIdeal> {
        self.admit(a)?;
        let f = a.defining_polynomial();
        let fl = directional_derivative(&f, l.form());
        let dual = LinearForm::new(l.dual_point().to_vec())?;
        let mut comps = Vec::new();
        for flat in a.flats() {
            let g = a.flat_polynomial(flat);
            let gl = directional_derivative(&g, &dual);
            comps.push(LocalComponent::new(&flat_point(flat)?, &[g, gl])?);
        }
        let gens = vec![f, fl];
        let group = Group::new("(f, df/dl)".into(), comps, &gens)?;
        self.saturated("ci", gens, vec![group])
    }

    fn residual_groups(&self, components: &[(Flat, LinearForm, usize)]) -> Result<Vec<Group>> {
        let mut groups = Vec::new();
        for (k, (flat, span, e)) in components.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let [u, v] = flat.equations();
            let (u, v) = (u.to_poly(), v.to_poly());
            let mut gens = vec![span.to_poly()];
            for i in 0..=*e as u32 {
                gens.push(&u.pow(i) * &v.pow(*e as u32 - i));
            }
            let comp = LocalComponent::new(&flat_point(flat)?, &gens)?;
            groups.push(Group::new(format!("residual component {k}"), vec![comp], &gens)?);
        }
        Ok(groups)
    }

    fn components(a: &Arrangement, l: &GeneralForm) -> Vec<(Flat, LinearForm, usize)> {
        residual::general_residual(a, l)
            .into_iter()
            .map(|c| (c.flat, c.span_form, c.exponent))
            .collect()
    }

    /// The general residual `r_A`, as the intersection of its primary
    /// components `(l_P, I_P^{t_P - 1})`.
    pub fn residual_ideal(&self, a: &Arrangement, l: &GeneralForm) -> Result<GradedIdeal> {
        self.admit(a)?;
        let groups = self.residual_groups(&Self::components(a, l))?;
        let fl = directional_derivative(&a.defining_polynomial(), l.form());
        self.saturated("residual", vec![fl], groups)
    }

    fn point_group(q: &[Rational]) -> Result<Group> {
        let m = linalg::Matrix::from_rows(3, &[q.to_vec()])?;
        let forms: Vec<Poly> = linalg::kernel_basis(&m)
            .into_iter()
            .map(|c| LinearForm::new(c).map(|f| f.to_poly()))
            .collect::<Result<_>>()?;
        let comp = LocalComponent::new(q, &forms)?;
        Group::new("dual point".into(), vec![comp], &forms)
    }

    /// The ideal of the dual point of `l`.
    pub fn point_ideal(&self, l: &GeneralForm) -> Result<GradedIdeal> {
        let group = Self::point_group(l.dual_point())?;
        let gens = group_generators(&group);
        self.saturated("dual point", gens, vec![group])
    }

    /// `I = r_A ∩ I_{l^v}`.
    pub fn auxiliary_ideal(&self, a: &Arrangement, l: &GeneralForm) -> Result<GradedIdeal> {
        self.admit(a)?;
        let mut groups = self.residual_groups(&Self::components(a, l))?;
        groups.push(Self::point_group(l.dual_point())?);
        self.saturated("auxiliary", Vec::new(), groups)
    }

    /// `a_P ∩ I_{l^v}`, where `a_P` lowers the exponent of the flat with
    /// index `flat` by one.
    pub fn lowered_auxiliary(&self, a: &Arrangement, l: &GeneralForm, flat: usize) -> Result<GradedIdeal> {
        self.admit(a)?;
        let mut comps = Self::components(a, l);
        let target = comps
            .get_mut(flat)
            .ok_or_else(|| Error::InvalidArgument(format!("no flat with index {flat}")))?;
        target.2 -= 1;
        let mut groups = self.residual_groups(&comps)?;
        groups.push(Self::point_group(l.dual_point())?);
        self.saturated("lowered auxiliary", Vec::new(), groups)
    }

    /// Rows whose common kernel is `[C : J]_j`.
    fn colon_conditions(&self, c: &GradedIdeal, j_ideal: &GradedIdeal, j: usize) -> Result<Vec<Vec<BigInt>>> {
        let index = MonomialIndex::new(j as u32, 3);
        let mut rows = Vec::new();
        for g in &j_ideal.int_generators {
            let big = MonomialIndex::new((j + g.degree) as u32, 3);
            for lambda in c.annihilator(j + g.degree)?.iter() {
                rows.push(index.basis().iter().map(|m| g.pair(m, lambda, &big)).collect());
            }
        }
        Ok(rows)
    }

    /// A basis of `[C : J]_j = { g : g * g_i ∈ [C]_{j + deg g_i} for all generators g_i of J }`.
    pub fn colon_degreewise(&self, c: &GradedIdeal, j_ideal: &GradedIdeal, j: usize) -> Result<Vec<Poly>> {
        let index = MonomialIndex::new(j as u32, 3);
        let rows = self.colon_conditions(c, j_ideal, j)?;
        Ok(linalg::kernel_integer(rows, index.len())
            .iter()
            .map(|r| to_poly(r, &index))
            .collect())
    }

    /// `dim [C : J]_j`.
    pub fn colon_dim(&self, c: &GradedIdeal, j_ideal: &GradedIdeal, j: usize) -> Result<usize> {
        let rows = self.colon_conditions(c, j_ideal, j)?;
        Ok(n_j(j) - exact_rank(&rows, n_j(j)))
    }

    /// Whether `[C : J]_j = [target]_j`.
    pub fn colon_equals(&self, c: &GradedIdeal, j_ideal: &GradedIdeal, target: &GradedIdeal, j: usize) -> Result<bool> {
        let n = n_j(j);
        let rows = self.colon_conditions(c, j_ideal, j)?;
        // The target must lie in the colon...
        for t in target.spanning_rows(j)? {
            if rows.iter().any(|r| !dot(r, &t).is_zero()) {
                return Ok(false);
            }
        }
        // ...and the colon can be no larger.
        let want = n - target.dim(j)?;
        if modular::rank_mod_p(&rows, n, self.primes()[0]) == want {
            return Ok(true);
        }
        Ok(exact_rank(&rows, n) == want)
    }

    /// Compares `[C : J]_j` with `[target]_j` for `j = 0..=upto`.
    pub fn compare_colon(&self, c: &GradedIdeal, j_ideal: &GradedIdeal, target: &GradedIdeal, upto: usize) -> Result<ColonComparison> {
        let mut mismatches = Vec::new();
        for j in 0..=upto {
            if !self.colon_equals(c, j_ideal, target, j)? {
                mismatches.push(j);
            }
        }
        Ok(ColonComparison { upto, mismatches })
    }

    /// The graded Betti numbers of a saturated ideal of points, from its
    /// minimal generators and the Hilbert function: in codimension two the
    /// third difference of `h_{S/I}` in degree `j` is `beta_{1,j} - beta_{0,j}`.
    ///
    /// `upto` must be past the point where the Hilbert function of `S/I`
    /// becomes constant.
    pub fn betti_cm_codim2(&self, ideal: &GradedIdeal, upto: usize) -> Result<FreeResolution> {
        if !ideal.is_saturated() {
            return Err(Error::NotCohenMacaulay(format!(
                "{} is not known to be saturated; Betti numbers are recovered for saturated ideals of points only",
                ideal.name
            )));
        }
        if upto == 0 {
            return Err(Error::InvalidArgument("need upto >= 1".into()));
        }
        let h = ideal.hilbert_function(upto)?;
        if h[upto] != h[upto - 1] {
            return Err(Error::NotCohenMacaulay(format!(
                "h_S/{} has not stabilized by degree {upto} ({} then {})",
                ideal.name,
                h[upto - 1],
                h[upto]
            )));
        }
        if h.iter().all(|&x| x == 0) {
            return Ok(FreeResolution::unit(&ideal.name, 0));
        }
        let hv = |j: i64| if j < 0 { 0 } else { h[(j as usize).min(upto)] as i64 };
        let mut gens = Vec::new();
        let mut syz = Vec::new();
        for j in 1..=upto + 1 {
            let ji = j as i64;
            let c = hv(ji) - 3 * hv(ji - 1) + 3 * hv(ji - 2) - hv(ji - 3);
            let b0 = if j <= upto { ideal.beta0(j)? as i64 } else { 0 };
            let b1 = b0 + c;
            if b1 < 0 {
                return Err(Error::NotCohenMacaulay(format!(
                    "negative first syzygy count in degree {j} for {}",
                    ideal.name
                )));
            }
            gens.extend(iter::repeat(ji).take(b0 as usize));
            syz.extend(iter::repeat(ji).take(b1 as usize));
        }
        FreeResolution::new(&ideal.name, 0, "recovered from the Hilbert function", vec![gens, syz])
            .map_err(|e| Error::NotCohenMacaulay(format!("inconsistent Hilbert numerator: {e}")))
    }

    /// Runs every oracle cross-check on `a` with the general form `l`.
    pub fn verify_all(&self, a: &Arrangement, l: &GeneralForm, upto: usize) -> Result<VerificationReport> {
        verify::verify_all(self, a, l, upto)
    }
}

fn group_generators(g: &Group) -> Vec<Poly> {
    g.generators
        .iter()
        .map(|f| {
            Poly::from_terms(
                3,
                f.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))),
            )
        })
        .collect()
}


fn flat_point(flat: &Flat) -> Result<Vec<Rational>> {
    flat.point()
        .ok_or_else(|| Error::InvalidArgument("flats of line arrangements are points".into()))
}

/// Default degree bound for the oracle checks.
pub fn default_upto(d: usize) -> usize {
    2 * d
}

#[cfg(test)]
mod tests;
