//! Named families of line arrangements (and a few in higher dimension).
//!
//! Deterministic families use small integer coordinates. Families that need
//! "general" choices draw integer coordinates from a seeded generator and then
//! check the resulting lattice, retrying with a wider range until it has
//! exactly the intended shape.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Arrangement, Lattice};
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::poly::LinearForm;

/// The five ways three pencil centers can be joined by hyperplanes of the
/// arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PencilCase {
    /// No connecting hyperplane.
    I,
    /// One hyperplane joins two of the centers.
    II,
    /// Two hyperplanes, through a common middle center.
    III,
    /// One hyperplane contains all three centers.
    IV,
    /// Each pair of centers is joined by its own hyperplane.
    V,
}

impl fmt::Display for PencilCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PencilCase::I => "i",
            PencilCase::II => "ii",
            PencilCase::III => "iii",
            PencilCase::IV => "iv",
            PencilCase::V => "v",
        };
        f.write_str(s)
    }
}

impl FromStr for PencilCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(PencilCase::I),
            "ii" | "2" => Ok(PencilCase::II),
            "iii" | "3" => Ok(PencilCase::III),
            "iv" | "4" => Ok(PencilCase::IV),
            "v" | "5" => Ok(PencilCase::V),
            other => Err(Error::InvalidFamily(format!("unknown three-pencil case {other:?}"))),
        }
    }
}

impl PencilCase {
    /// Multiplicities `(t_1, t_2, t_3)` of the centers, given the numbers of
    /// non-connecting hyperplanes through each.
    pub fn multiplicities(self, a: usize, b: usize, c: usize) -> [usize; 3] {
        match self {
            PencilCase::I => [a, b, c],
            PencilCase::II => [a + 1, b + 1, c],
            PencilCase::III => [a + 1, b + 2, c + 1],
            PencilCase::IV => [a + 1, b + 1, c + 1],
            PencilCase::V => [a + 2, b + 2, c + 2],
        }
    }

    /// Number of hyperplanes.
    pub fn degree(self, a: usize, b: usize, c: usize) -> usize {
        let connecting = match self {
            PencilCase::I => 0,
            PencilCase::II | PencilCase::IV => 1,
            PencilCase::III => 2,
            PencilCase::V => 3,
        };
        a + b + c + connecting
    }

    /// The parameters in the order classification reports them: sorted within
    /// each group of interchangeable centers.
    pub fn canonical(self, a: usize, b: usize, c: usize) -> (usize, usize, usize) {
        match self {
            PencilCase::II => (a.min(b), a.max(b), c),
            PencilCase::III => (a.min(c), b, a.max(c)),
            _ => {
                let mut v = [a, b, c];
                v.sort_unstable();
                (v[0], v[1], v[2])
            }
        }
    }
}

/// A family name with its parameters, as written on the command line
/// (`fermat:2`, `disconnected:3,4;s=2`, `three-pencils:iii,2,2,2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `d` hyperplanes in general position in projective `n`-space.
    Generic { d: usize, n: usize },
    Pencil { d: usize },
    NearPencil { d: usize },
    /// Pencils with the given multiplicities plus `s` general lines.
    Disconnected { multiplicities: Vec<usize>, s: usize },
    /// Pencils of `a` and `b` lines sharing one line.
    ConnectedTwoPencil { a: usize, b: usize },
    ThreePencils { case: PencilCase, a: usize, b: usize, c: usize },
    Fermat { k: usize },
    /// The coordinate hyperplanes of projective `n`-space.
    Simplex { n: usize },
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidFamily(format!("not a nonnegative integer: {p:?}")))
        })
        .collect()
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let name = name.trim().to_ascii_lowercase().replace('_', "-");
        let wrong = |expected: &str| Error::InvalidFamily(format!("{name} expects parameters {expected}, got {rest:?}"));
        let one = |v: &[usize]| -> Result<usize> {
            match v {
                [x] => Ok(*x),
                _ => Err(wrong("<d>")),
            }
        };
        match name.as_str() {
            "generic" => match parse_list(rest)?.as_slice() {
                [d] => Ok(FamilySpec::Generic { d: *d, n: 2 }),
                [d, n] => Ok(FamilySpec::Generic { d: *d, n: *n }),
                _ => Err(wrong("<d>[,<n>]")),
            },
            "pencil" => Ok(FamilySpec::Pencil { d: one(&parse_list(rest)?)? }),
            "near-pencil" | "nearpencil" => Ok(FamilySpec::NearPencil { d: one(&parse_list(rest)?)? }),
            "disconnected" | "disconnected-pencils" => {
                let (list, s) = match rest.split_once(';') {
                    Some((list, tail)) => {
                        let value = tail
                            .trim()
                            .strip_prefix("s=")
                            .ok_or_else(|| wrong("<t1>,<t2>,...[;s=<s>]"))?;
                        let s = value
                            .trim()
                            .parse()
                            .map_err(|_| wrong("<t1>,<t2>,...[;s=<s>]"))?;
                        (list, s)
                    }
                    None => (rest, 0),
                };
                Ok(FamilySpec::Disconnected { multiplicities: parse_list(list)?, s })
            }
            "connected2pencil" | "connected-2-pencil" | "connected-two-pencil" => match parse_list(rest)?.as_slice() {
                [a, b] => Ok(FamilySpec::ConnectedTwoPencil { a: *a, b: *b }),
                _ => Err(wrong("<a>,<b>")),
            },
            "three-pencils" | "threepencils" => {
                let (case, nums) = rest.split_once(',').ok_or_else(|| wrong("<case>,<a>,<b>,<c>"))?;
                match parse_list(nums)?.as_slice() {
                    [a, b, c] => Ok(FamilySpec::ThreePencils {
                        case: case.parse()?,
                        a: *a,
                        b: *b,
                        c: *c,
                    }),
                    _ => Err(wrong("<case>,<a>,<b>,<c>")),
                }
            }
            "fermat" => Ok(FamilySpec::Fermat { k: one(&parse_list(rest)?)? }),
            "simplex" | "coordinate-simplex" => Ok(FamilySpec::Simplex { n: one(&parse_list(rest)?)? }),
            _ => Err(Error::InvalidFamily(format!("unknown family {name:?}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Generic { d, n: 2 } => write!(f, "generic:{d}"),
            FamilySpec::Generic { d, n } => write!(f, "generic:{d},{n}"),
            FamilySpec::Pencil { d } => write!(f, "pencil:{d}"),
            FamilySpec::NearPencil { d } => write!(f, "near-pencil:{d}"),
            FamilySpec::Disconnected { multiplicities, s: 0 } => write!(f, "disconnected:{}", join(multiplicities)),
            FamilySpec::Disconnected { multiplicities, s } => {
                write!(f, "disconnected:{};s={s}", join(multiplicities))
            }
            FamilySpec::ConnectedTwoPencil { a, b } => write!(f, "connected2pencil:{a},{b}"),
            FamilySpec::ThreePencils { case, a, b, c } => write!(f, "three-pencils:{case},{a},{b},{c}"),
            FamilySpec::Fermat { k } => write!(f, "fermat:{k}"),
            FamilySpec::Simplex { n } => write!(f, "simplex:{n}"),
        }
    }
}

impl FamilySpec {
    /// Builds the arrangement. `seed` only matters for families that need
    /// general choices.
    pub fn build(&self, seed: u64) -> Result<Arrangement> {
        match self {
            FamilySpec::Generic { d, n } => generic(*d, *n, seed),
            FamilySpec::Pencil { d } => pencil(*d),
            FamilySpec::NearPencil { d } => near_pencil(*d),
            FamilySpec::Disconnected { multiplicities, s } => disconnected_pencils(multiplicities, *s, seed),
            FamilySpec::ConnectedTwoPencil { a, b } => connected_2pencil(*a, *b),
            FamilySpec::ThreePencils { case, a, b, c } => three_pencils(*case, *a, *b, *c, seed),
            FamilySpec::Fermat { k } => fermat(*k),
            FamilySpec::Simplex { n } => coordinate_simplex(*n),
        }
    }

    /// The intersection lattice. Unlike [`FamilySpec::build`] this also works
    /// for Fermat arrangements that have no rational model.
    pub fn lattice(&self, seed: u64) -> Result<Lattice> {
        match self {
            FamilySpec::Fermat { k } if *k >= 3 => Lattice::fermat(*k),
            _ => Ok(self.build(seed)?.lattice().clone()),
        }
    }
}

/// Builds a family from its name and integer parameters (the three-pencil
/// case is passed as its first parameter, 1 through 5).
pub fn make_family(name: &str, params: &[usize], seed: u64) -> Result<Arrangement> {
    let list = params.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let spec: FamilySpec = format!("{name}:{list}").parse()?;
    spec.build(seed)
}

fn forms(rows: &[[i64; 3]]) -> Result<Vec<LinearForm>> {
    rows.iter().map(|r| LinearForm::from_i64(r)).collect()
}

/// `d` concurrent lines `x0, x1, x0 + x1, x0 + 2 x1, ...` through `(0:0:1)`.
pub fn pencil(d: usize) -> Result<Arrangement> {
    if d == 0 {
        return Err(Error::InvalidFamily("pencil needs d >= 1".into()));
    }
    let mut rows = vec![[1, 0, 0]];
    if d >= 2 {
        rows.push([0, 1, 0]);
    }
    for k in 1..d.saturating_sub(1) {
        rows.push([1, k as i64, 0]);
    }
    Arrangement::new(2, forms(&rows)?)
}

/// A pencil of `d - 1` lines plus the line `x2 = 0` missing its center.
pub fn near_pencil(d: usize) -> Result<Arrangement> {
    if d < 3 {
        return Err(Error::InvalidFamily("near-pencil needs d >= 3".into()));
    }
    let base = pencil(d - 1)?;
    base.with_hyperplane(LinearForm::coordinate(3, 2))
}

/// Pencils through `(0:0:1)` and `(0:1:0)` with `a` and `b` lines, one of
/// them the joining line `x0 = 0`. The arrangement has `a + b - 1` lines.
pub fn connected_2pencil(a: usize, b: usize) -> Result<Arrangement> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidFamily(format!(
            "connected 2-pencil needs a, b >= 2, got ({a}, {b})"
        )));
    }
    let mut rows = vec![[1, 0, 0]];
    rows.extend((0..a - 1).map(|i| [i as i64, 1, 0]));
    rows.extend((0..b - 1).map(|j| [j as i64, 0, 1]));
    Arrangement::new(2, forms(&rows)?)
}

/// The Fermat arrangement `(x^k - y^k)(y^k - z^k)(z^k - x^k)` for `k <= 2`.
/// Larger `k` needs roots of unity; use [`Lattice::fermat`] instead.
pub fn fermat(k: usize) -> Result<Arrangement> {
    let rows: Vec<[i64; 3]> = match k {
        1 => vec![[1, -1, 0], [0, 1, -1], [-1, 0, 1]],
        2 => vec![[1, -1, 0], [1, 1, 0], [0, 1, -1], [0, 1, 1], [-1, 0, 1], [1, 0, 1]],
        _ => {
            return Err(Error::InvalidFamily(format!(
                "fermat({k}) has no model over the rationals; only its lattice is available"
            )))
        }
    };
    Arrangement::new(2, forms(&rows)?)
}

/// The `n + 1` coordinate hyperplanes of projective `n`-space.
pub fn coordinate_simplex(n: usize) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::InvalidFamily("simplex needs n >= 1".into()));
    }
    Arrangement::new(n, (0..=n).map(|i| LinearForm::coordinate(n + 1, i)).collect())
}

struct Sampler {
    rng: ChaCha8Rng,
    attempt: usize,
}

impl Sampler {
    fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            attempt: 0,
        }
    }

    /// Coefficient range, widened every 25 failed attempts.
    fn range(&self) -> i64 {
        3 + (self.attempt / 25) as i64
    }

    fn next_attempt(&mut self) -> Result<()> {
        self.attempt += 1;
        if self.attempt > 2000 {
            return Err(Error::InvalidFamily("could not realize the requested configuration".into()));
        }
        Ok(())
    }

    fn vector(&mut self, len: usize) -> Vec<i64> {
        let r = self.range();
        loop {
            let v: Vec<i64> = (0..len).map(|_| self.rng.gen_range(-r..=r)).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }

    fn point(&mut self) -> [i64; 3] {
        let v = self.vector(3);
        [v[0], v[1], v[2]]
    }

    /// A random line through `p`, as the cross product with a random point.
    fn line_through(&mut self, p: [i64; 3]) -> [i64; 3] {
        loop {
            let line = cross(p, self.point());
            if line != [0, 0, 0] {
                return line;
            }
        }
    }
}

fn cross(u: [i64; 3], v: [i64; 3]) -> [i64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn vanishes(line: [i64; 3], p: [i64; 3]) -> bool {
    line[0] * p[0] + line[1] * p[1] + line[2] * p[2] == 0
}

/// `d` hyperplanes in projective `n`-space with only double flats.
pub fn generic(d: usize, n: usize, seed: u64) -> Result<Arrangement> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidFamily("generic needs d >= 1 and n >= 1".into()));
    }
    if n == 1 && d > 2 {
        return Err(Error::InvalidFamily("in P^1 at most two hyperplanes avoid a common point".into()));
    }
    let mut sampler = Sampler::new(seed);
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| sampler.vector(n + 1)).collect();
        let candidate = rows
            .iter()
            .map(|r| LinearForm::from_i64(r))
            .collect::<Result<Vec<_>>>()
            .and_then(|f| Arrangement::new(n, f));
        if let Ok(a) = candidate {
            if a.lattice().multiplicities().iter().all(|&t| t == 2) {
                return Ok(a);
            }
        }
        sampler.next_attempt()?;
    }
}

/// Line arrangement with prescribed pencil centers and extra lines.
///
/// `centers` lists the pencil centers, `through[i]` the number of extra lines
/// through center `i`, and `fixed` lines that must be part of the result
/// (connecting lines). The check demands that the centers have the expected
/// multiplicities and every other flat is a double point.
fn realize_pencils(
    sampler: &mut Sampler,
    centers: &[[i64; 3]],
    through: &[usize],
    fixed: &[[i64; 3]],
    free_lines: usize,
) -> Option<Arrangement> {
    let mut rows: Vec<[i64; 3]> = fixed.to_vec();
    for (&c, &k) in centers.iter().zip(through) {
        for _ in 0..k {
            rows.push(sampler.line_through(c));
        }
    }
    for _ in 0..free_lines {
        let line = sampler.point();
        rows.push(line);
    }
    let forms = forms(&rows).ok()?;
    let a = Arrangement::new(2, forms).ok()?;
    let expected: Vec<usize> = centers
        .iter()
        .zip(through)
        .map(|(&c, &k)| k + fixed.iter().filter(|&&l| vanishes(l, c)).count())
        .collect();
    let mut center_flats = 0;
    for flat in a.flats() {
        let p = flat.point().expect("plane arrangement");
        let at_center = centers.iter().position(|&c| {
            let q: Vec<_> = c.iter().map(|&x| rat(x)).collect();
            crate::linalg::normalize(&q).as_deref() == Some(&p[..])
        });
        match at_center {
            Some(i) if flat.multiplicity() == expected[i] => center_flats += 1,
            Some(_) => return None,
            None if flat.multiplicity() == 2 => {}
            None => return None,
        }
    }
    // Centers with fewer than two lines do not show up as flats.
    let visible = expected.iter().filter(|&&t| t >= 2).count();
    (center_flats == visible).then_some(a)
}

/// Pencils of the given multiplicities, no line through two centers, plus
/// `s` lines through no center.
pub fn disconnected_pencils(multiplicities: &[usize], s: usize, seed: u64) -> Result<Arrangement> {
    if multiplicities.is_empty() || multiplicities.iter().any(|&t| t < 3) {
        return Err(Error::InvalidFamily(
            "disconnected pencils need at least one center, each of multiplicity >= 3".into(),
        ));
    }
    let mut sampler = Sampler::new(seed);
    loop {
        let centers: Vec<[i64; 3]> = multiplicities.iter().map(|_| sampler.point()).collect();
        if let Some(a) = realize_pencils(&mut sampler, &centers, multiplicities, &[], s) {
            return Ok(a);
        }
        sampler.next_attempt()?;
    }
}

/// Three pencils joined according to `case`; `a`, `b`, `c` count the lines
/// through each center besides the connecting ones. In case (ii) the joined
/// centers carry `a` and `b`; in case (iii) the middle center carries `b`.
pub fn three_pencils(case: PencilCase, a: usize, b: usize, c: usize, seed: u64) -> Result<Arrangement> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidFamily("three pencils need a, b, c >= 1".into()));
    }
    let mut sampler = Sampler::new(seed);
    loop {
        let p1 = sampler.point();
        let p2 = sampler.point();
        let p3 = if case == PencilCase::IV {
            let (u, v) = (sampler.vector(1)[0], sampler.vector(1)[0]);
            [u * p1[0] + v * p2[0], u * p1[1] + v * p2[1], u * p1[2] + v * p2[2]]
        } else {
            sampler.point()
        };
        let fixed: Vec<[i64; 3]> = match case {
            PencilCase::I => vec![],
            PencilCase::II | PencilCase::IV => vec![cross(p1, p2)],
            PencilCase::III => vec![cross(p1, p2), cross(p2, p3)],
            PencilCase::V => vec![cross(p1, p2), cross(p2, p3), cross(p1, p3)],
        };
        let degenerate = fixed.iter().any(|&l| l == [0, 0, 0])
            || (case != PencilCase::IV && vanishes(cross(p1, p2), p3))
            || cross(p1, p2) == [0, 0, 0]
            || cross(p1, p3) == [0, 0, 0]
            || cross(p2, p3) == [0, 0, 0];
        if !degenerate {
            if let Some(arr) = realize_pencils(&mut sampler, &[p1, p2, p3], &[a, b, c], &fixed, 0) {
                return Ok(arr);
            }
        }
        sampler.next_attempt()?;
    }
}
