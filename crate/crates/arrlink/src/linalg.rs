//! Exact linear algebra over the rationals.
//!
//! Everything here works on arbitrary-precision rationals. Rank is computed by
//! fraction-free (Bareiss) elimination on integer rows obtained by clearing
//! denominators row by row; reduced row echelon forms use the fraction-free
//! Gauss-Jordan variant so that only a single exact division by the final
//! pivot is needed per entry.
//!
//! The [`modular`] submodule offers the same rank primitive over a word-sized
//! prime field. It is only a filter: callers must confirm anything they report
//! with the rational routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = BigRational;

/// Shorthand for building a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for building `n / d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from a list of equal-length rows. An empty list gives a
    /// `0 x cols` matrix, so the column count must be passed explicitly.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers, used heavily in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Matrix::from_rows(cols, &data).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }
}

/// Exact dot product of two equal-length rational vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a rational vector to a primitive integer vector with the same span.
///
/// The result has gcd of entries equal to one and a positive first nonzero
/// entry. The zero vector maps to the zero vector.
pub fn primitive_integer_row(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides an integer vector by the gcd of its entries and makes the leading
/// nonzero entry positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

/// Rank of an integer matrix given as rows, by Bareiss elimination.
///
/// Rows may have any length up to `cols`; shorter rows are not allowed.
pub fn rank_integer(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() && !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &Matrix) -> usize {
    let rows = (0..m.rows).map(|i| primitive_integer_row(m.row(i))).collect();
    rank_integer(rows, m.cols)
}

/// Fraction-free Gauss-Jordan on integer rows.
///
/// Returns the nonzero rows of the final matrix together with the pivot
/// columns and the common pivot value `D`. Dividing every returned row by `D`
/// yields the reduced row echelon form.
fn gauss_jordan_integer(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt) {
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let pivot = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let mut v = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() && !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots, prev)
}

/// Reduced row echelon form over the rationals.
///
/// Returns the nonzero rows of the RREF (each with leading entry one) and the
/// pivot column of each row.
pub fn rref(m: &Matrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = (0..m.rows).map(|i| primitive_integer_row(m.row(i))).collect();
    let (a, pivots, _) = gauss_jordan_integer(rows, m.cols);
    let out = a
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|x| Rational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    (out, pivots)
}

/// Scales a vector so that its first nonzero entry is one.
/// Returns `None` for the zero vector.
pub fn normalize(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.iter().map(|x| x / &lead).collect())
}

/// Basis of the right null space `{ v : m v = 0 }`.
///
/// Vectors are returned in order of increasing free column and normalized so
/// that the first nonzero coordinate is one.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let rows = (0..m.rows).map(|i| primitive_integer_row(m.row(i))).collect();
    let (a, pivots, d) = gauss_jordan_integer(rows, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigInt::zero(); m.cols];
        v[free] = d.clone();
        for (row, &p) in a.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        let rv: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
        basis.push(normalize(&rv).expect("kernel vector has a unit entry"));
    }
    basis
}

/// Integer basis of the right null space of an integer matrix, each vector
/// primitive.
pub fn kernel_integer(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let (a, pivots, d) = gauss_jordan_integer(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigInt::zero(); cols];
            v[free] = d.clone();
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            make_primitive(&mut v);
            v
        })
        .collect()
}

/// Canonical basis of the span of `vectors`: the nonzero rows of its reduced
/// row echelon form. Two lists span the same subspace exactly when their
/// canonical bases are equal.
pub fn canonical_basis(len: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let m = Matrix::from_rows(len, vectors).expect("vectors of equal length");
    rref(&m).0
}

/// Basis of `span(a) ∩ span(b)`, in canonical (reduced echelon) form.
///
/// Both lists must consist of vectors of the same length. Empty inputs give an
/// empty intersection.
pub fn subspace_intersection(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    // Solve sum alpha_i a_i - sum beta_k b_k = 0 and map the alphas back.
    let cols = a.len() + b.len();
    let mut m = Matrix::zeros(n, cols);
    for (i, v) in a.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            m.set(r, i, x.clone());
        }
    }
    for (k, v) in b.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            m.set(r, a.len() + k, -x.clone());
        }
    }
    let combos: Vec<Vec<Rational>> = kernel_basis(&m)
        .into_iter()
        .map(|coeffs| {
            let mut w = vec![Rational::zero(); n];
            for (alpha, v) in coeffs.iter().zip(a) {
                if alpha.is_zero() {
                    continue;
                }
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi += alpha * vi;
                }
            }
            w
        })
        .collect();
    canonical_basis(n, &combos)
}

/// Exact rank of an integer matrix from ranks modulo several primes.
///
/// A rank seen modulo a prime is a lower bound for the rational rank, and a
/// prime whose rank is at most `r` divides every `(r+1)`-minor. The minors are
/// bounded by the Hadamard bound, so once the primes tried multiply to more
/// than that bound the largest rank seen is the rational rank. Matrices of full
/// rank modulo the first prime return immediately.
pub fn rank_multimodular(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let full = rows.len().min(cols);
    if full == 0 {
        return 0;
    }
    let mut row_logs: Vec<f64> = rows.iter().map(|r| log2_norm(r.iter())).collect();
    let mut col_logs: Vec<f64> = (0..cols)
        .map(|c| log2_norm(rows.iter().map(|r| &r[c])))
        .collect();
    row_logs.sort_by(|a, b| b.total_cmp(a));
    col_logs.sort_by(|a, b| b.total_cmp(a));
    let minor_bound = |k: usize| -> f64 {
        let by_rows: f64 = row_logs.iter().take(k).sum();
        let by_cols: f64 = col_logs.iter().take(k).sum();
        by_rows.min(by_cols)
    };
    let mut best = 0;
    let mut covered_bits = 0.0;
    for p in modular::primes() {
        best = best.max(modular::rank_mod_p(&rows, cols, p));
        if best == full {
            return best;
        }
        // floor(log2 p) undercounts, which keeps the stopping rule safe.
        covered_bits += (63 - p.leading_zeros()) as f64;
        if covered_bits > minor_bound(best + 1) + 1.0 {
            return best;
        }
    }
    unreachable!("ran out of word-sized primes")
}

/// An upper bound for log2 of the Euclidean norm of a vector.
fn log2_norm<'a>(entries: impl Iterator<Item = &'a BigInt>) -> f64 {
    let sum: BigInt = entries.filter(|x| !x.is_zero()).map(|x| x * x).sum();
    if sum.is_zero() {
        0.0
    } else {
        sum.bits() as f64 / 2.0
    }
}

/// Fraction-free reduced row echelon form of integer rows.
///
/// Returns the nonzero rows, their pivot columns and the common pivot `D`:
/// every returned row has `D` at its own pivot and zero at the other pivots.
pub fn rref_integer(rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt) {
    gauss_jordan_integer(rows, cols)
}

/// Arithmetic modulo word-sized primes.
///
/// These ranks are lower bounds for rational ranks. The exact routines in the
/// parent module use them only together with a proven upper bound.
pub mod modular {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    /// Largest prime used, comfortably above 2^20 and below 2^32 so that
    /// products of residues fit in a `u64`.
    pub const DEFAULT_PRIME: u64 = 2_147_483_629;

    /// Residue of `x` in `[0, p)`.
    pub fn reduce(x: &BigInt, p: u64) -> u64 {
        let p_signed = p as i64;
        if let Some(v) = x.to_i64() {
            return v.rem_euclid(p_signed) as u64;
        }
        let r = (x % BigInt::from(p)).to_i64().expect("residue fits in i64");
        r.rem_euclid(p_signed) as u64
    }

    fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }

    fn inverse(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    /// Deterministic primality test for `n < 2^32` (Miller-Rabin with the
    /// bases 2, 7 and 61).
    pub fn is_prime(n: u64) -> bool {
        assert!(n < 1 << 32, "primality test limited to 32-bit inputs");
        if n < 2 {
            return false;
        }
        for small in [2u64, 3, 5, 7, 11, 13, 61] {
            if n % small == 0 {
                return n == small;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 7, 61] {
            let mut x = pow_mod(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = x * x % n;
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    /// Primes in decreasing order, starting at [`DEFAULT_PRIME`].
    pub fn primes() -> impl Iterator<Item = u64> {
        ((1u64 << 30)..=DEFAULT_PRIME).rev().filter(|&n| is_prime(n))
    }

    /// Gaussian elimination modulo `p`; returns the indices of input rows that
    /// were used as pivots, in pivot order.
    fn eliminate(rows: &[Vec<BigInt>], cols: usize, p: u64) -> Vec<usize> {
        let mut a: Vec<(usize, Vec<u64>)> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.iter().map(|x| reduce(x, p)).collect::<Vec<u64>>()))
            .filter(|(_, r)| r.iter().any(|&x| x != 0))
            .collect();
        let m = a.len();
        let mut r = 0;
        for c in 0..cols {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| a[i].1[c] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let inv = inverse(a[r].1[c], p);
            let pivot_row: Vec<u64> = a[r].1.iter().map(|&x| x * inv % p).collect();
            for (_, row) in a.iter_mut().skip(r + 1) {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        let sub = f * pivot_row[j] % p;
                        row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        a.into_iter().map(|(i, _)| i).collect()
    }

    /// Rank of an integer matrix reduced modulo `p`; a lower bound for the
    /// rational rank.
    pub fn rank_mod_p(rows: &[Vec<BigInt>], cols: usize, p: u64) -> usize {
        assert!(p > (1 << 20) && p < (1 << 32), "prime out of range");
        eliminate(rows, cols, p).len()
    }

    /// Indices of rows that are independent modulo `p`, hence independent over
    /// the rationals as well.
    pub fn independent_rows(rows: &[Vec<BigInt>], cols: usize, p: u64) -> Vec<usize> {
        let mut idx = eliminate(rows, cols, p);
        idx.sort_unstable();
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(2, 4)), 0);
    }

    #[test]
    fn rank_with_dependent_row() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.transpose()), 2);
    }

    #[test]
    fn rank_handles_fractions() {
        let m = Matrix::from_rows(
            2,
            &[vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), rat(1)]],
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = Matrix::from_i64(&[&[1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            assert_eq!(v.iter().fold(Rational::zero(), |a, x| a + x), Rational::zero());
        }
        assert_eq!(rank(&Matrix::from_rows(3, &k).unwrap()), 2);
    }

    #[test]
    fn integer_kernel_is_primitive() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]];
        let k = kernel_integer(rows.clone(), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            assert!(g.is_one());
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let k = kernel_basis(&Matrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(rank(&Matrix::from_rows(3, &k).unwrap()), 3);
    }

    #[test]
    fn kernel_vectors_are_normalized() {
        let m = Matrix::from_i64(&[&[2, 4, -6, 8], &[1, 0, 3, 5]]);
        for v in kernel_basis(&m) {
            assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_one());
            assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rref_is_reduced() {
        let m = Matrix::from_i64(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let (rows, pivots) = rref(&m);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows[0], vec![rat(1), rat(0), rat(-1)]);
        assert_eq!(rows[1], vec![rat(0), rat(1), rat(2)]);
    }

    fn e(i: usize, n: usize) -> Vec<Rational> {
        (0..n).map(|k| if k == i { rat(1) } else { rat(0) }).collect()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(subspace_intersection(&[e(0, 3)], &[e(0, 3)]), vec![e(0, 3)]);
        assert!(subspace_intersection(&[e(0, 3)], &[e(1, 3)]).is_empty());
        let meet = subspace_intersection(&[e(0, 3), e(1, 3)], &[e(1, 3), e(2, 3)]);
        assert_eq!(meet, vec![e(1, 3)]);
    }

    #[test]
    fn modular_rank_agrees_on_small_example() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)],
        ];
        assert_eq!(modular::rank_mod_p(&rows, 3, modular::DEFAULT_PRIME), 2);
        assert_eq!(modular::independent_rows(&rows, 3, modular::DEFAULT_PRIME).len(), 2);
    }

    #[test]
    fn primality() {
        assert!(modular::is_prime(modular::DEFAULT_PRIME));
        assert!(!modular::is_prime(2_147_483_631));
        assert!(modular::is_prime(2_147_483_647));
        let first: Vec<u64> = modular::primes().take(2).collect();
        assert_eq!(first[0], modular::DEFAULT_PRIME);
        assert!(first[1] < first[0] && modular::is_prime(first[1]));
    }

    #[test]
    fn multimodular_rank_survives_prime_multiples() {
        // Rows built from the first prime: rank drops modulo that prime only.
        let p = BigInt::from(modular::DEFAULT_PRIME);
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1) + &p],
        ];
        assert_eq!(modular::rank_mod_p(&rows, 2, modular::DEFAULT_PRIME), 1);
        assert_eq!(rank_multimodular(&rows, 2), 2);
        assert_eq!(rank_integer(rows, 2), 2);
    }

    #[test]
    fn multimodular_rank_of_deficient_matrix() {
        let m: Vec<Vec<BigInt>> = [[3i64, 5, 7, 11], [6, 10, 14, 22], [1, 0, 0, 1], [4, 5, 7, 12]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(rank_multimodular(&m, 4), 2);
        assert_eq!(rank_integer(m, 4), 2);
    }
}
