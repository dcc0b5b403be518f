//! General residuals of Jacobian ideals.
//!
//! For a general linear form `l` the residual `r_A = (f_A, df_A/dl) : Jac(f_A)`
//! is the intersection, over all flats `P`, of `(l_P, I_P^{t_P - 1})`, where
//! `l_P` is the hyperplane spanned by `P` and the dual point of `l`. This
//! module works with that description symbolically; graded pieces are only
//! ever materialized by the oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::arrangement::{Arrangement, Flat};
use crate::error::{Error, Result};
use crate::invariants::residual_degree;
use crate::linalg::{self, Rational};
use crate::poly::{directional_derivative, render_rational, LinearForm, Poly};

/// The open conditions checked before a linear form is accepted as general.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// The dual point lies on no hyperplane of the arrangement.
    OffHyperplanes,
    /// `df/dl` does not vanish at the dual point.
    DerivativeNonvanishing,
    /// No span of a flat and the dual point contains a second flat.
    SpansAvoidOtherFlats,
    /// The span forms `l_P` are pairwise distinct.
    SpanFormsDistinct,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::OffHyperplanes => "dual point off every hyperplane",
            Condition::DerivativeNonvanishing => "df/dl nonzero at the dual point",
            Condition::SpansAvoidOtherFlats => "each span of a flat and the dual point contains no other flat",
            Condition::SpanFormsDistinct => "span forms pairwise distinct",
        })
    }
}

/// A linear form certified to be general for a given arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralForm {
    form: LinearForm,
    dual_point: Vec<Rational>,
    derivative_at_dual: Rational,
    certificate: Vec<Condition>,
}

impl GeneralForm {
    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    /// The dual point `l^v`: the coefficients of `l` read as coordinates.
    pub fn dual_point(&self) -> &[Rational] {
        &self.dual_point
    }

    /// The value of `df/dl` at the dual point.
    pub fn derivative_at_dual(&self) -> &Rational {
        &self.derivative_at_dual
    }

    pub fn certificate(&self) -> &[Condition] {
        &self.certificate
    }
}

impl Serialize for GeneralForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            form: String,
            dual_point: Vec<String>,
            derivative_at_dual: String,
            certificate: Vec<Condition>,
        }
        Repr {
            form: self.form.to_string(),
            dual_point: self.dual_point.iter().map(render_rational).collect(),
            derivative_at_dual: render_rational(&self.derivative_at_dual),
            certificate: self.certificate.clone(),
        }
        .serialize(s)
    }
}

/// The hyperplane through `flat` and `q`, or `None` if `q` lies on the flat.
pub fn span_form(flat: &Flat, q: &[Rational]) -> Option<LinearForm> {
    let [u, v] = flat.equations();
    let (uq, vq) = (u.evaluate(q), v.evaluate(q));
    let coeffs: Vec<Rational> = u
        .coeffs()
        .iter()
        .zip(v.coeffs())
        .map(|(a, b)| &vq * a - &uq * b)
        .collect();
    LinearForm::new(coeffs).ok()
}

/// `df/dl` at `q` by the product rule, without expanding `f`.
fn derivative_at(a: &Arrangement, l: &LinearForm, q: &[Rational]) -> Rational {
    let values: Vec<Rational> = a.forms().iter().map(|h| h.evaluate(q)).collect();
    let mut total = Rational::zero();
    for (i, h) in a.forms().iter().enumerate() {
        let mut term = linalg::dot(h.coeffs(), l.coeffs());
        for (k, v) in values.iter().enumerate() {
            if k != i {
                term *= v;
            }
        }
        total += term;
    }
    total
}

/// Checks the generality conditions for `l` and returns the certificate, or
/// a `Hypothesis` error naming the first condition that fails.
pub fn certify(a: &Arrangement, l: &LinearForm) -> Result<GeneralForm> {
    if l.nvars() != a.nvars() {
        return Err(Error::Dimension(format!(
            "linear form has {} coefficients, expected {}",
            l.nvars(),
            a.nvars()
        )));
    }
    let q = l.coeffs().to_vec();
    if let Some(i) = a.forms().iter().position(|h| h.evaluate(&q).is_zero()) {
        return Err(Error::Hypothesis(format!("the dual point of {l} lies on hyperplane {i}")));
    }
    let derivative_at_dual = derivative_at(a, l, &q);
    if derivative_at_dual.is_zero() {
        return Err(Error::Hypothesis(format!("df/dl vanishes at the dual point of {l}")));
    }
    let spans: Vec<LinearForm> = a
        .flats()
        .iter()
        .map(|p| span_form(p, &q).expect("dual point is off every hyperplane, hence off every flat"))
        .collect();
    for (i, span) in spans.iter().enumerate() {
        if let Some(j) = (0..a.flats().len()).find(|&j| j != i && a.flats()[j].lies_on(span)) {
            return Err(Error::Hypothesis(format!(
                "the span of flat {:?} and the dual point contains flat {:?}",
                a.flats()[i].members(),
                a.flats()[j].members()
            )));
        }
    }
    for i in 0..spans.len() {
        if spans[i + 1..].contains(&spans[i]) {
            return Err(Error::Hypothesis("two flats have the same span form".into()));
        }
    }
    Ok(GeneralForm {
        form: l.clone(),
        dual_point: q,
        derivative_at_dual,
        certificate: vec![
            Condition::OffHyperplanes,
            Condition::DerivativeNonvanishing,
            Condition::SpansAvoidOtherFlats,
            Condition::SpanFormsDistinct,
        ],
    })
}

/// A certified general form with small integer coefficients drawn from a
/// generator seeded by `seed`. The coefficient range widens after repeated
/// failures; since the bad forms lie on a proper closed set this terminates.
pub fn choose_general_form(a: &Arrangement, seed: u64) -> GeneralForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range = 8i64;
    loop {
        for _ in 0..32 {
            let coeffs: Vec<i64> = (0..a.nvars()).map(|_| rng.gen_range(-range..=range)).collect();
            if let Ok(g) = LinearForm::from_i64(&coeffs).and_then(|l| certify(a, &l)) {
                return g;
            }
        }
        range *= 4;
    }
}

/// One primary component `(l_P, I_P^e)` of a general residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub flat: Flat,
    pub span_form: LinearForm,
    pub exponent: usize,
}

impl PrimaryComponent {
    /// Degree of the component, a complete intersection of type `(1, e)`.
    pub fn degree(&self) -> usize {
        self.exponent
    }
}

impl fmt::Display for PrimaryComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u, v] = self.flat.equations();
        if self.exponent == 1 {
            write!(f, "({} ; ({}, {}))", self.span_form, u, v)
        } else {
            write!(f, "({} ; ({}, {})^{})", self.span_form, u, v, self.exponent)
        }
    }
}

impl Serialize for PrimaryComponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            members: &'a [usize],
            multiplicity: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            point: Option<Vec<String>>,
            equations: [String; 2],
            span_form: String,
            exponent: usize,
        }
        let [u, v] = self.flat.equations();
        Repr {
            members: self.flat.members(),
            multiplicity: self.flat.multiplicity(),
            point: self.flat.point().map(|p| p.iter().map(render_rational).collect()),
            equations: [u.to_string(), v.to_string()],
            span_form: self.span_form.to_string(),
            exponent: self.exponent,
        }
        .serialize(s)
    }
}

/// The primary decomposition of the general residual: one component per flat,
/// with exponent `t_P - 1`. Empty (the unit ideal) when there are no flats.
pub fn general_residual(a: &Arrangement, l: &GeneralForm) -> Vec<PrimaryComponent> {
    a.flats()
        .iter()
        .map(|p| PrimaryComponent {
            flat: p.clone(),
            span_form: span_form(p, l.dual_point()).expect("certified dual point is off every flat"),
            exponent: p.multiplicity() - 1,
        })
        .collect()
}

/// `df_A/dl`, a minimal generator of degree `d - 1` of the general residual.
pub fn residual_generator_of_min_degree(a: &Arrangement, l: &GeneralForm) -> Poly {
    directional_derivative(&a.defining_polynomial(), l.form())
}

/// Description of `I = r_A ∩ I_{l^v}`, the residual with the dual point added.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryIdeal {
    pub components: Vec<PrimaryComponent>,
    #[serde(serialize_with = "serialize_point")]
    pub extra_point: Vec<Rational>,
    /// `deg r_A + 1`; meaningful as a length only in the plane, where all
    /// components are points.
    pub degree: usize,
    pub regularity: usize,
    /// From this degree on, `h_{S/I} = h_{S/r} + 1`; below it the two agree.
    pub shift_from: usize,
}

fn serialize_point<S: Serializer>(p: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(render_rational))
}

impl AuxiliaryIdeal {
    /// `h_{S/I}` from `h_{S/r}` given for `j = 0, 1, ...`.
    pub fn hilbert_from_residual(&self, h_r: &[i64]) -> Vec<i64> {
        h_r.iter()
            .enumerate()
            .map(|(j, &h)| if j >= self.shift_from { h + 1 } else { h })
            .collect()
    }
}

pub fn auxiliary_ideal(a: &Arrangement, l: &GeneralForm) -> AuxiliaryIdeal {
    let d = a.d();
    AuxiliaryIdeal {
        components: general_residual(a, l),
        extra_point: l.dual_point().to_vec(),
        degree: residual_degree(a.lattice()) + 1,
        regularity: d,
        shift_from: d.saturating_sub(1),
    }
}

/// An intersection of complete intersections `(l_P, I_P^{e_P})` over distinct
/// codimension-two subspaces `P`, with `l_P` the span of `P` and a point `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualLikeIdeal {
    components: Vec<(Flat, usize)>,
    dual_point: Vec<Rational>,
}

impl ResidualLikeIdeal {
    pub fn new(components: Vec<(Flat, usize)>, dual_point: Vec<Rational>) -> Result<ResidualLikeIdeal> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("a residual-like ideal needs a component".into()));
        }
        let nvars = dual_point.len();
        for (i, (p, e)) in components.iter().enumerate() {
            if *e == 0 {
                return Err(Error::InvalidArgument("exponents must be positive".into()));
            }
            if p.key()[0].len() != nvars {
                return Err(Error::Dimension("subspace and point in different spaces".into()));
            }
            if components[..i].iter().any(|(q, _)| q.key() == p.key()) {
                return Err(Error::InvalidArgument("subspaces must be distinct".into()));
            }
            if span_form(p, &dual_point).is_none() {
                return Err(Error::Hypothesis("the point lies on one of the subspaces".into()));
            }
        }
        Ok(ResidualLikeIdeal {
            components,
            dual_point,
        })
    }

    /// The residual-like ideal carried by a general residual.
    pub fn from_residual(components: &[PrimaryComponent], l: &GeneralForm) -> Result<ResidualLikeIdeal> {
        ResidualLikeIdeal::new(
            components.iter().map(|c| (c.flat.clone(), c.exponent)).collect(),
            l.dual_point().to_vec(),
        )
    }

    pub fn components(&self) -> &[(Flat, usize)] {
        &self.components
    }

    pub fn dual_point(&self) -> &[Rational] {
        &self.dual_point
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(|(_, e)| e).sum()
    }
}

/// The hyperplane containing both subspaces, if they span one.
fn common_hyperplane(p: &Flat, q: &Flat) -> Option<LinearForm> {
    let meet = linalg::subspace_intersection(&p.key()[..], &q.key()[..]);
    match meet.as_slice() {
        [row] => LinearForm::new(row.clone()).ok(),
        _ => None,
    }
}

/// Decides whether a residual-like ideal is the general residual of an
/// arrangement and, if so, returns that arrangement.
///
/// With a single subspace the answer is the pencil of `e + 1` hyperplanes
/// through it. Otherwise the candidates are the hyperplanes spanned by two of
/// the subspaces, weighted by the sum of the exponents of the subspaces they
/// contain; the arrangement consists of the candidates of maximal weight
/// `d - 1`, and exists exactly when there are `d` of them and each subspace
/// lies on `e_P + 1` of them.
pub fn is_general_residual(r: &ResidualLikeIdeal) -> Option<Arrangement> {
    let nvars = r.dual_point.len();
    if let [(p, e)] = r.components.as_slice() {
        let [u, v] = p.equations();
        let mut forms = vec![u.clone(), v.clone()];
        for k in 1..*e as i64 {
            let c: Vec<Rational> = u
                .coeffs()
                .iter()
                .zip(v.coeffs())
                .map(|(a, b)| a + linalg::rat(k) * b)
                .collect();
            forms.push(LinearForm::new(c).ok()?);
        }
        return Arrangement::new(nvars - 1, forms).ok();
    }

    let mut candidates: BTreeMap<Vec<Rational>, LinearForm> = BTreeMap::new();
    for (i, (p, _)) in r.components.iter().enumerate() {
        for (q, _) in &r.components[i + 1..] {
            if let Some(h) = common_hyperplane(p, q) {
                candidates.entry(h.coeffs().to_vec()).or_insert(h);
            }
        }
    }
    let weighted: Vec<(usize, LinearForm)> = candidates
        .into_values()
        .map(|h| {
            let w = r.components.iter().filter(|(p, _)| p.lies_on(&h)).map(|(_, e)| e).sum();
            (w, h)
        })
        .collect();
    let top = weighted.iter().map(|(w, _)| *w).max()?;
    let d = top + 1;
    let chosen: Vec<LinearForm> = weighted.into_iter().filter(|(w, _)| *w == top).map(|(_, h)| h).collect();
    if chosen.len() != d {
        return None;
    }
    for (p, e) in &r.components {
        if chosen.iter().filter(|h| p.lies_on(h)).count() != e + 1 {
            return None;
        }
    }
    let a = Arrangement::new(nvars - 1, chosen).ok()?;
    let same_support = a.flats().len() == r.components.len()
        && a.flats().iter().all(|f| r.components.iter().any(|(p, _)| p.key() == f.key()));
    same_support.then_some(a)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::arrangement::FamilySpec;
    use crate::linalg::rat;

    fn family(spec: &str) -> Arrangement {
        spec.parse::<FamilySpec>().unwrap().build(0).unwrap()
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_i64(c).unwrap()
    }

    fn exponents_by_key(comps: &[PrimaryComponent]) -> BTreeMap<[Vec<Rational>; 2], usize> {
        comps.iter().map(|c| (c.flat.key().clone(), c.exponent)).collect()
    }

    #[test]
    fn certificate_of_the_triangle() {
        let tri = family("simplex:2");
        let g = certify(&tri, &lf(&[1, 2, 5])).unwrap();
        // df/dl at (1, 2, 5) for f = x0 x1 x2: 2*5 + 1*5*2 + 1*2*5.
        assert_eq!(g.derivative_at_dual(), &rat(30));
        assert_eq!(g.certificate().len(), 4);
        let value = residual_generator_of_min_degree(&tri, &g).evaluate(g.dual_point()).unwrap();
        assert_eq!(&value, g.derivative_at_dual());
    }

    #[test]
    fn certificate_failures() {
        let tri = family("simplex:2");
        assert!(matches!(certify(&tri, &lf(&[1, 1, 0])), Err(Error::Hypothesis(_))));
        // (1, -1, 5) lies on x0 + x1, which passes through (0:0:1) and (1:-1:0).
        let quad = Arrangement::from_i64(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let err = certify(&quad, &lf(&[1, -1, 5])).unwrap_err();
        assert!(err.to_string().contains("contains flat"), "{err}");
        assert!(certify(&quad, &lf(&[1, 2])).is_err());
    }

    #[test]
    fn chosen_forms_are_deterministic_and_certified() {
        for spec in ["simplex:2", "pencil:4", "generic:5", "fermat:2", "connected2pencil:3,4", "simplex:3"] {
            let a = family(spec);
            let g = choose_general_form(&a, 11);
            assert_eq!(g, choose_general_form(&a, 11));
            assert!(certify(&a, g.form()).is_ok());
        }
    }

    #[test]
    fn triangle_residual_is_three_reduced_points() {
        let tri = family("simplex:2");
        let g = choose_general_form(&tri, 0);
        let comps = general_residual(&tri, &g);
        assert_eq!(comps.len(), 3);
        for c in &comps {
            assert_eq!(c.exponent, 1);
            let p = c.flat.point().unwrap();
            assert_eq!(p.iter().filter(|x| !x.is_zero()).count(), 1);
            assert!(c.span_form.evaluate(&p).is_zero());
            assert!(c.span_form.evaluate(g.dual_point()).is_zero());
        }
        let gen = residual_generator_of_min_degree(&tri, &g);
        assert_eq!(gen.degree(), Some(2));
        for c in &comps {
            assert!(gen.evaluate(&c.flat.point().unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn pencil_residual_is_one_complete_intersection() {
        for d in 2..7 {
            let a = family(&format!("pencil:{d}"));
            let g = choose_general_form(&a, 3);
            let comps = general_residual(&a, &g);
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].exponent, d - 1);
            assert_eq!(residual_generator_of_min_degree(&a, &g).degree(), Some(d as u32 - 1));
        }
    }

    #[test]
    fn simplex_in_space_gives_a_star_configuration() {
        let a = family("simplex:3");
        let g = choose_general_form(&a, 0);
        let comps = general_residual(&a, &g);
        assert_eq!(comps.len(), 6);
        for c in &comps {
            assert_eq!(c.exponent, 1);
            let [u, v] = c.flat.equations();
            for form in [u, v] {
                assert_eq!(form.coeffs().iter().filter(|x| !x.is_zero()).count(), 1);
            }
        }
    }

    #[test]
    fn degrees_add_up() {
        for spec in ["generic:6", "fermat:2", "near-pencil:5", "three-pencils:iii,2,1,2", "simplex:3"] {
            let a = family(spec);
            let g = choose_general_form(&a, 5);
            let total: usize = general_residual(&a, &g).iter().map(PrimaryComponent::degree).sum();
            assert_eq!(total, residual_degree(a.lattice()), "{spec}");
        }
    }

    #[test]
    fn auxiliary_ideal_degrees() {
        let cases = [("pencil:5", 5), ("simplex:2", 4), ("generic:4", 7)];
        for (spec, degree) in cases {
            let a = family(spec);
            let aux = auxiliary_ideal(&a, &choose_general_form(&a, 1));
            assert_eq!(aux.degree, degree, "{spec}");
            assert_eq!(aux.regularity, a.d());
        }
        let a = family("pencil:4");
        let aux = auxiliary_ideal(&a, &choose_general_form(&a, 1));
        assert_eq!(aux.hilbert_from_residual(&[1, 2, 3, 3, 3]), vec![1, 2, 3, 4, 4]);
    }

    #[test]
    fn deletion_raises_exponents_on_the_deleted_hyperplane() {
        for spec in ["fermat:2", "three-pencils:iv,2,2,2", "near-pencil:5", "generic:5", "simplex:3"] {
            let a = family(spec);
            let g = choose_general_form(&a, 2);
            let full = exponents_by_key(&general_residual(&a, &g));
            for i in 0..a.d() {
                let smaller = a.without(i).unwrap();
                let Ok(g_small) = certify(&smaller, g.form()) else { continue };
                let part = exponents_by_key(&general_residual(&smaller, &g_small));
                let h = &a.forms()[i];
                for p in a.flats() {
                    let e = full[p.key()];
                    match (p.lies_on(h), part.get(p.key())) {
                        (false, old) => assert_eq!(old, Some(&e)),
                        (true, Some(old)) => assert_eq!(old + 1, e),
                        (true, None) => assert_eq!(e, 1),
                    }
                }
                assert!(part.keys().all(|k| full.contains_key(k)));
            }
        }
    }

    #[test]
    fn recognition_examples() {
        let q = vec![rat(1), rat(2), rat(5)];
        let x = |i: usize| LinearForm::coordinate(3, i);
        let point = |i: usize, j: usize| Flat::from_equations(&x(i), &x(j)).unwrap();
        let three = ResidualLikeIdeal::new(vec![(point(1, 2), 1), (point(0, 2), 1), (point(0, 1), 1)], q.clone()).unwrap();
        let tri = is_general_residual(&three).unwrap();
        assert_eq!(tri.d(), 3);
        assert!(tri.forms().iter().all(|f| f.coeffs().iter().filter(|c| !c.is_zero()).count() == 1));

        let two = ResidualLikeIdeal::new(vec![(point(1, 2), 1), (point(0, 2), 1)], q.clone()).unwrap();
        assert!(is_general_residual(&two).is_none());

        let one = ResidualLikeIdeal::new(vec![(point(0, 1), 4)], q.clone()).unwrap();
        let pencil = is_general_residual(&one).unwrap();
        assert_eq!(pencil.d(), 5);
        assert_eq!(pencil.flats().len(), 1);

        assert!(ResidualLikeIdeal::new(vec![(point(0, 1), 1), (point(0, 1), 2)], q.clone()).is_err());
        assert!(ResidualLikeIdeal::new(vec![(point(0, 1), 1)], vec![rat(0), rat(0), rat(1)]).is_err());
    }

    #[test]
    fn recognition_round_trips_on_families() {
        for spec in [
            "simplex:2",
            "pencil:4",
            "near-pencil:5",
            "generic:5",
            "fermat:2",
            "connected2pencil:3,4",
            "three-pencils:v,1,1,1",
            "disconnected:3,4;s=1",
            "simplex:3",
        ] {
            let a = family(spec);
            let g = choose_general_form(&a, 4);
            let r = ResidualLikeIdeal::from_residual(&general_residual(&a, &g), &g).unwrap();
            let b = is_general_residual(&r).unwrap_or_else(|| panic!("{spec}"));
            assert_eq!(b.d(), a.d(), "{spec}");
            let mut ma = a.lattice().multiplicities();
            let mut mb = b.lattice().multiplicities();
            ma.sort_unstable();
            mb.sort_unstable();
            assert_eq!(ma, mb, "{spec}");
        }
    }

    fn arb_lines() -> impl Strategy<Value = Arrangement> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 2..8).prop_filter_map("proportional or zero forms", |rows| {
            let forms: Vec<LinearForm> = rows.iter().filter_map(|r| LinearForm::from_i64(r).ok()).collect();
            let mut unique: Vec<LinearForm> = Vec::new();
            for f in forms {
                if !unique.contains(&f) {
                    unique.push(f);
                }
            }
            (unique.len() >= 2).then(|| Arrangement::new(2, unique).ok()).flatten()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_residuals_round_trip(a in arb_lines(), seed in 0u64..1000) {
            let g = choose_general_form(&a, seed);
            let comps = general_residual(&a, &g);
            let total: usize = comps.iter().map(|c| c.exponent).sum();
            prop_assert_eq!(total, residual_degree(a.lattice()));
            let r = ResidualLikeIdeal::from_residual(&comps, &g).unwrap();
            let b = is_general_residual(&r).unwrap();
            let keys = |x: &Arrangement| {
                let mut k: Vec<_> = x.flats().iter().map(|f| (f.key().clone(), f.multiplicity())).collect();
                k.sort();
                k
            };
            prop_assert_eq!(keys(&a), keys(&b));
        }
    }
}
