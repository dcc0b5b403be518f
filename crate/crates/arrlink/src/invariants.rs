//! Numeric invariants read off the intersection lattice: the global Tjurina
//! number, the degree of the general residual, and the bounds on the Tjurina
//! number together with their equality configurations.
//!
//! All functions take a [`Lattice`], so they apply verbatim to hyperplane
//! arrangements in any dimension and to lattices without a rational model.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arrangement::{Arrangement, Lattice};
use crate::error::{Error, Result};
use crate::poly::LinearForm;

/// `tau = sum (t_P - 1)^2`, the degree of the Jacobian scheme.
pub fn tjurina(lattice: &Lattice) -> usize {
    lattice.multiplicities().iter().map(|&t| (t - 1) * (t - 1)).sum()
}

/// `deg r = sum (t_P - 1) = d (d - 1) - tau`.
pub fn residual_degree(lattice: &Lattice) -> usize {
    lattice.multiplicities().iter().map(|&t| t - 1).sum()
}

/// Degree of the general residual after adding `h`: the old degree plus the
/// number of distinct traces `H' ∩ h`.
pub fn degree_after_adding(a: &Arrangement, h: &LinearForm) -> Result<usize> {
    Ok(residual_degree(a.lattice()) + a.intersection_count(h)?)
}

/// Whether the Jacobian ideal is a complete intersection, which happens
/// exactly when all hyperplanes (at least two) share a codimension-two flat.
pub fn check_ci(lattice: &Lattice) -> bool {
    lattice.d() >= 2 && lattice.multiplicities().contains(&lattice.d())
}

/// Why an equality case of a Tjurina bound holds, in lattice terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Every flat is a double flat.
    NoTripleFlat,
    /// A flat of multiplicity `d - 1`; the remaining hyperplane misses it.
    NearPencil { center: Vec<usize> },
    /// A flat of multiplicity `d - 2` and a triple flat formed by the two
    /// remaining hyperplanes and one member of the first.
    JoinedPencil { center: Vec<usize>, triple: Vec<usize> },
    /// The upper bound for configurations without `d - 1` concurrent
    /// hyperplanes is attained with `d = 4`, where no characterization of the
    /// equality case is known.
    Unclassified,
    /// The same bound is attained with `d >= 5` but without a joined pencil.
    /// Any free arrangement with exponents `(2, d - 3)` does this, the braid
    /// arrangement of six lines being the smallest example.
    BeyondJoinedPencil,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NoTripleFlat => write!(f, "lower bound attained: no three hyperplanes share a flat"),
            Witness::NearPencil { center } => write!(
                f,
                "near-pencil bound attained: hyperplanes {center:?} share a flat, the last one does not"
            ),
            Witness::JoinedPencil { center, triple } => write!(
                f,
                "joined-pencil bound attained: hyperplanes {center:?} share a flat and {triple:?} meet in a triple flat"
            ),
            Witness::Unclassified => write!(f, "joined-pencil bound attained with d = 4: equality case unclassified"),
            Witness::BeyondJoinedPencil => write!(f, "joined-pencil bound attained without a joined pencil"),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The Tjurina number with the three bounds that apply to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TjurinaReport {
    pub d: usize,
    pub tau: usize,
    /// `C(d, 2)`, valid for all arrangements.
    pub lower: usize,
    /// `d^2 - 3d + 3`, present when the hyperplanes do not all share a flat.
    pub upper_b: Option<usize>,
    /// `d^2 - 4d + 7`, present when no `d - 1` hyperplanes share a flat.
    pub upper_c: Option<usize>,
    pub lower_eq: bool,
    pub b_eq: bool,
    pub c_eq: bool,
    /// The lattice-level description of the equality case for `upper_c`,
    /// known for `d >= 5` only (`None` otherwise or when the bound does not
    /// apply).
    pub c_characterized: Option<bool>,
    pub witnesses: Vec<Witness>,
}

/// Finds a flat of multiplicity `d - 2` and a triple flat made of the two
/// hyperplanes outside it plus one of its members.
fn joined_pencil(lattice: &Lattice) -> Option<Witness> {
    let d = lattice.d();
    for center in lattice.flats().iter().filter(|m| m.len() + 2 == d) {
        let outside: Vec<usize> = (0..d).filter(|h| center.binary_search(h).is_err()).collect();
        for triple in lattice.flats().iter().filter(|m| m.len() == 3) {
            let shared = triple.iter().filter(|h| center.binary_search(h).is_ok()).count();
            if shared == 1 && outside.iter().all(|h| triple.contains(h)) {
                return Some(Witness::JoinedPencil {
                    center: center.clone(),
                    triple: triple.clone(),
                });
            }
        }
    }
    None
}

/// Evaluates the bounds for an arrangement of at least three hyperplanes.
pub fn tjurina_bounds(lattice: &Lattice) -> Result<TjurinaReport> {
    let d = lattice.d();
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "Tjurina bounds need at least three hyperplanes, got {d}"
        )));
    }
    let tau = tjurina(lattice);
    let max_t = lattice.multiplicities().into_iter().max().unwrap_or(0);
    let lower = d * (d - 1) / 2;
    let upper_b = (max_t < d).then_some(d * d + 3 - 3 * d);
    let upper_c = (max_t + 1 < d).then_some(d * d + 7 - 4 * d);

    let lower_eq = tau == lower;
    let b_eq = upper_b == Some(tau);
    let c_eq = upper_c == Some(tau);

    let mut witnesses = Vec::new();
    if max_t <= 2 {
        witnesses.push(Witness::NoTripleFlat);
    }
    if max_t + 1 == d && d >= 3 {
        let center = lattice.flats().iter().find(|m| m.len() + 1 == d).cloned().unwrap_or_default();
        witnesses.push(Witness::NearPencil { center });
    }
    let c_characterized = match upper_c {
        Some(_) if d >= 5 => {
            let found = joined_pencil(lattice);
            let hit = found.is_some();
            witnesses.extend(found);
            Some(hit)
        }
        _ => None,
    };
    if c_eq && d == 4 {
        witnesses.push(Witness::Unclassified);
    }
    if c_eq && c_characterized == Some(false) {
        witnesses.push(Witness::BeyondJoinedPencil);
    }
    Ok(TjurinaReport {
        d,
        tau,
        lower,
        upper_b,
        upper_c,
        lower_eq,
        b_eq,
        c_eq,
        c_characterized,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::FamilySpec;

    fn lattice(spec: &str) -> Lattice {
        spec.parse::<FamilySpec>().unwrap().lattice(0).unwrap()
    }

    #[test]
    fn closed_forms_on_named_families() {
        for d in 3..10 {
            assert_eq!(tjurina(&lattice(&format!("pencil:{d}"))), (d - 1) * (d - 1));
            assert_eq!(tjurina(&lattice(&format!("generic:{d}"))), d * (d - 1) / 2);
            assert_eq!(residual_degree(&lattice(&format!("pencil:{d}"))), d - 1);
        }
        for d in 4..10 {
            assert_eq!(tjurina(&lattice(&format!("near-pencil:{d}"))), d * d - 3 * d + 3);
        }
        for d in 5..10 {
            let l = lattice(&format!("connected2pencil:{},3", d - 2));
            assert_eq!(residual_degree(&l), 3 * d - 7);
        }
    }

    #[test]
    fn triangle_residual_has_degree_three() {
        assert_eq!(residual_degree(&lattice("simplex:2")), 3);
    }

    #[test]
    fn degree_after_adding_matches_recount() {
        let tri = FamilySpec::Simplex { n: 2 }.build(0).unwrap();
        let h = LinearForm::from_i64(&[1, 1, 0]).unwrap();
        assert_eq!(degree_after_adding(&tri, &h).unwrap(), 5);
        let bigger = tri.with_hyperplane(h).unwrap();
        assert_eq!(residual_degree(bigger.lattice()), 5);

        let pencil = FamilySpec::Pencil { d: 5 }.build(0).unwrap();
        let transversal = LinearForm::coordinate(3, 2);
        assert_eq!(degree_after_adding(&pencil, &transversal).unwrap(), 4 + 5);
        assert!(degree_after_adding(&pencil, &LinearForm::coordinate(3, 0)).is_err());
    }

    #[test]
    fn report_for_generic_lines() {
        let r = tjurina_bounds(&lattice("generic:5")).unwrap();
        assert_eq!((r.tau, r.lower), (10, 10));
        assert!(r.lower_eq && !r.b_eq && !r.c_eq);
        assert!(r.tau < r.upper_b.unwrap() && r.tau < r.upper_c.unwrap());
        assert_eq!(r.witnesses, vec![Witness::NoTripleFlat]);
    }

    #[test]
    fn report_for_three_lines() {
        let r = tjurina_bounds(&lattice("generic:3")).unwrap();
        assert_eq!((r.tau, r.lower, r.upper_b, r.upper_c), (3, 3, Some(3), None));
        assert!(r.lower_eq && r.b_eq);
        let r = tjurina_bounds(&lattice("pencil:3")).unwrap();
        assert_eq!((r.tau, r.upper_b, r.upper_c), (4, None, None));
    }

    #[test]
    fn report_for_joined_pencil() {
        let r = tjurina_bounds(&lattice("connected2pencil:4,3")).unwrap();
        assert_eq!(r.d, 6);
        assert_eq!(r.tau, 19);
        assert!(r.c_eq);
        assert_eq!(r.c_characterized, Some(true));
    }

    #[test]
    fn braid_arrangement_attains_the_joined_pencil_bound() {
        let r = tjurina_bounds(&lattice("fermat:2")).unwrap();
        assert_eq!((r.d, r.tau, r.upper_c), (6, 19, Some(19)));
        assert!(r.c_eq);
        assert_eq!(r.c_characterized, Some(false));
        assert_eq!(r.witnesses, vec![Witness::BeyondJoinedPencil]);
    }

    #[test]
    fn report_for_near_pencil() {
        let r = tjurina_bounds(&lattice("near-pencil:6")).unwrap();
        assert!(r.b_eq);
        assert_eq!(r.upper_c, None);
        assert!(matches!(r.witnesses[0], Witness::NearPencil { .. }));
    }

    #[test]
    fn two_disconnected_pencils_with_two_lines() {
        for d in 8..11 {
            let t = d - 2;
            let l = lattice(&format!("disconnected:{t};s=2"));
            // A single pencil of d - 2 lines plus two general lines.
            assert_eq!(residual_degree(&l), (t - 1) + 1 + 2 * t);
        }
    }

    #[test]
    fn small_cases_of_the_joined_pencil_bound() {
        // With d = 4 the bound needs all flats double, so it is never attained.
        let quad = Lattice::new(
            4,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]],
        )
        .unwrap();
        let r = tjurina_bounds(&quad).unwrap();
        assert_eq!(r.upper_c, Some(7));
        assert_eq!(r.c_characterized, None);
        assert!(!r.c_eq);
        let near = Lattice::new(4, vec![vec![0, 1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]).unwrap();
        assert_eq!(tjurina_bounds(&near).unwrap().upper_c, None);
        assert!(tjurina_bounds(&Lattice::new(2, vec![vec![0, 1]]).unwrap()).is_err());
    }

    #[test]
    fn complete_intersection_criterion() {
        assert!(check_ci(&lattice("pencil:5")));
        assert!(!check_ci(&lattice("generic:3")));
        let planes = crate::arrangement::Arrangement::from_i64(
            3,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[1, 2, 0, 0]],
        )
        .unwrap();
        assert!(check_ci(planes.lattice()));
    }
}
