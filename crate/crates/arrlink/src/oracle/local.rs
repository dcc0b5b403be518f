//! Zero-dimensional ideals of the plane described by Taylor coefficients.
//!
//! A primary ideal supported at a point `p` is determined by which Taylor
//! coefficients of `F(p + s U + t V)` it forces to vanish. Every local ideal
//! used by the oracle is generated by polynomials that are cones with vertex
//! `p` (products of lines through `p` and their derivatives), so its local
//! generators are homogeneous in `(s, t)` and the conditions split by order:
//! in order `e` the coefficient vector of the degree `e` part must be
//! annihilated by a fixed set of weight vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Rational};
use crate::poly::{directional_derivative, LinearForm, Monomial, MonomialIndex, Poly};

/// Orders beyond which a local ideal that has not become everything is
/// treated as not zero-dimensional.
const MAX_ORDER: usize = 64;

/// Truncated Taylor series of every monomial of one degree.
struct Series {
    degree: usize,
    values: Vec<Vec<BigInt>>,
}

pub(crate) struct LocalComponent {
    point: Vec<BigInt>,
    /// `[k, u, v]`: `p_k != 0`, and `U`, `V` are the coordinate vectors `e_u`,
    /// `e_v`.
    chart: [usize; 3],
    /// `weights[e]` spans the annihilator of the order `e` part of the ideal.
    weights: Vec<Vec<Vec<BigInt>>>,
    series: Mutex<Option<Arc<Series>>>,
    rows: Mutex<HashMap<usize, Arc<Vec<Vec<BigInt>>>>>,
}

fn offset(order: usize) -> usize {
    order * (order + 1) / 2
}

impl LocalComponent {
    /// The local ideal at `point` generated by `cones`, each of which must be
    /// invariant under translation by the point.
    pub fn new(point: &[Rational], cones: &[Poly]) -> Result<LocalComponent> {
        let point = linalg::primitive_integer_row(point);
        if point.len() != 3 {
            return Err(Error::Dimension("local descriptions are for points of the plane".into()));
        }
        let k = point.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroForm)?;
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let chart = [k, others[0], others[1]];
        let along = LinearForm::new(point.iter().cloned().map(Rational::from_integer).collect())?;

        let mut local: Vec<Vec<Rational>> = Vec::new();
        for cone in cones {
            if !directional_derivative(cone, &along).is_zero() {
                return Err(Error::Certification(format!("{cone} is not a cone over the point")));
            }
            let deg = cone.degree().ok_or_else(|| Error::Certification("zero local generator".into()))? as usize;
            let mut coeffs = vec![Rational::zero(); deg + 1];
            for (m, c) in cone.terms() {
                let e = m.exponents();
                if e[chart[0]] == 0 {
                    coeffs[e[chart[1]] as usize] = c.clone();
                }
            }
            local.push(coeffs);
        }

        let mut weights = Vec::new();
        for order in 0..=MAX_ORDER {
            let mut rows = Vec::new();
            for g in &local {
                let deg = g.len() - 1;
                if deg > order {
                    continue;
                }
                for shift in 0..=order - deg {
                    let mut row = vec![Rational::zero(); order + 1];
                    for (a, c) in g.iter().enumerate() {
                        row[a + shift] = c.clone();
                    }
                    rows.push(row);
                }
            }
            let m = linalg::Matrix::from_rows(order + 1, &rows)?;
            if rows.is_empty() || linalg::rank(&m) < order + 1 {
                let ann = if rows.is_empty() {
                    (0..=order)
                        .map(|a| {
                            let mut w = vec![BigInt::zero(); order + 1];
                            w[a] = BigInt::from(1);
                            w
                        })
                        .collect()
                } else {
                    linalg::kernel_basis(&m).iter().map(|w| linalg::primitive_integer_row(w)).collect()
                };
                weights.push(ann);
            } else {
                return Ok(LocalComponent {
                    point,
                    chart,
                    weights,
                    series: Mutex::new(None),
                    rows: Mutex::new(HashMap::new()),
                });
            }
        }
        Err(Error::Certification("local ideal does not have finite colength".into()))
    }

    /// Number of conditions, the colength of the local ideal.
    pub fn colength(&self) -> usize {
        self.weights.iter().map(Vec::len).sum()
    }

    fn truncation(&self) -> usize {
        self.weights.len()
    }

    fn series_up_to(&self, degree: usize) -> Arc<Series> {
        let mut guard = self.series.lock().expect("series lock");
        let mut current = match guard.as_ref() {
            Some(s) if s.degree <= degree => s.clone(),
            _ => {
                let n = self.truncation();
                let mut one = vec![BigInt::zero(); offset(n).max(1)];
                one[0] = BigInt::from(1);
                Arc::new(Series {
                    degree: 0,
                    values: vec![one],
                })
            }
        };
        while current.degree < degree {
            current = Arc::new(self.advance(&current));
        }
        *guard = Some(current.clone());
        current
    }

    /// Series of degree `j + 1` monomials from those of degree `j`, using
    /// `x^M = x^{M - e_i} * (p_i + [i = u] s + [i = v] t)`.
    fn advance(&self, prev: &Series) -> Series {
        let n = self.truncation();
        let lower = MonomialIndex::new(prev.degree as u32, 3);
        let upper = MonomialIndex::new(prev.degree as u32 + 1, 3);
        let [_, u, v] = self.chart;
        let values = upper
            .basis()
            .iter()
            .map(|m| {
                let e = m.exponents();
                let i = (0..3).find(|&i| e[i] > 0).expect("positive degree");
                let mut smaller = e.to_vec();
                smaller[i] -= 1;
                let src = &prev.values[lower.position(&Monomial::new(smaller)).expect("monomial")];
                let c = &self.point[i];
                let mut out = vec![BigInt::zero(); src.len()];
                for order in 0..n {
                    for a in 0..=order {
                        let b = order - a;
                        let mut x = c * &src[offset(order) + a];
                        if order > 0 {
                            if i == u && a > 0 {
                                x += &src[offset(order - 1) + a - 1];
                            }
                            if i == v && b > 0 {
                                x += &src[offset(order - 1) + a];
                            }
                        }
                        out[offset(order) + a] = x;
                    }
                }
                out
            })
            .collect();
        Series {
            degree: prev.degree + 1,
            values,
        }
    }

    /// The defining functionals on forms of degree `j`, as integer rows over
    /// the monomial basis of that degree.
    pub fn functionals(&self, j: usize) -> Arc<Vec<Vec<BigInt>>> {
        if let Some(rows) = self.rows.lock().expect("rows lock").get(&j) {
            return rows.clone();
        }
        let series = self.series_up_to(j);
        let mut rows = Vec::with_capacity(self.colength());
        for (order, ws) in self.weights.iter().enumerate() {
            for w in ws {
                let row: Vec<BigInt> = series
                    .values
                    .iter()
                    .map(|s| {
                        w.iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(a, x)| x * &s[offset(order) + a])
                            .sum()
                    })
                    .collect();
                rows.push(row);
            }
        }
        let rows = Arc::new(rows);
        self.rows.lock().expect("rows lock").insert(j, rows.clone());
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn point(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| rat(x)).collect()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn reduced_point_is_evaluation() {
        let c = LocalComponent::new(&point(&[1, 2, 3]), &[p("2*x0 - x1"), p("3*x0 - x2")]).unwrap();
        assert_eq!(c.colength(), 1);
        let rows = c.functionals(2);
        let idx = MonomialIndex::new(2, 3);
        let at = |m: &[u32]| rows[0][idx.position(&Monomial::new(m.to_vec())).unwrap()].clone();
        assert_eq!(at(&[2, 0, 0]), BigInt::from(1));
        assert_eq!(at(&[0, 1, 1]), BigInt::from(6));
        assert_eq!(at(&[0, 0, 2]), BigInt::from(9));
    }

    #[test]
    fn fat_point_colength() {
        // (x1, x2)^3 at (1:0:0) has colength 6; (x1, x2^3) has colength 3.
        let c = LocalComponent::new(&point(&[1, 0, 0]), &[p("x1^3"), p("x1^2*x2"), p("x1*x2^2"), p("x2^3")]).unwrap();
        assert_eq!(c.colength(), 6);
        let c = LocalComponent::new(&point(&[1, 0, 0]), &[p("x1"), p("x2^3")]).unwrap();
        assert_eq!(c.colength(), 3);
        assert!(LocalComponent::new(&point(&[1, 0, 0]), &[p("x1 + x0")]).is_err());
        assert!(LocalComponent::new(&point(&[1, 0, 0]), &[p("x1")]).is_err());
    }

    #[test]
    fn functionals_vanish_on_the_ideal() {
        // Jacobian of g = x1 x2 (x1 + x2) at (1:0:0): colength 4.
        let g = p("x1^2*x2 + x1*x2^2");
        let c = LocalComponent::new(&point(&[1, 0, 0]), &[g.partial(1), g.partial(2)]).unwrap();
        assert_eq!(c.colength(), 4);
        for j in [3usize, 5, 2, 6] {
            let idx = MonomialIndex::new(j as u32, 3);
            let rows = c.functionals(j);
            if j >= 2 {
                for q in [g.partial(1), g.partial(2)] {
                    for m in crate::poly::monomial_basis(j as u32 - 2, 3) {
                        let prod = q.mul_monomial(&m);
                        for row in rows.iter() {
                            let value: Rational = prod
                                .terms()
                                .map(|(mm, coef)| coef * Rational::from_integer(row[idx.position(mm).unwrap()].clone()))
                                .sum();
                            assert!(value.is_zero());
                        }
                    }
                }
            }
        }
    }
}
