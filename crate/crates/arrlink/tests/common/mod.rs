//! Test corpus shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use arrlink::arrangement::{Arrangement, FamilySpec};
use arrlink::linalg::Rational;
use arrlink::poly::LinearForm;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn family(spec: &str, seed: u64) -> Arrangement {
    spec.parse::<FamilySpec>()
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
        .build(seed)
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Named line arrangements with at most `max_d` lines.
pub fn named_specs(max_d: usize) -> Vec<String> {
    let mut out = vec!["simplex:2".to_string(), "fermat:2".to_string()];
    for d in 3..=max_d {
        out.push(format!("generic:{d}"));
        out.push(format!("pencil:{d}"));
        if d >= 4 {
            out.push(format!("near-pencil:{d}"));
        }
    }
    for a in 3..=max_d {
        for b in a..=max_d {
            if a + b - 1 <= max_d {
                out.push(format!("connected2pencil:{a},{b}"));
            }
        }
    }
    for t1 in 3..=max_d {
        for t2 in t1..=max_d {
            for s in 0..=max_d {
                if t1 + t2 + s <= max_d {
                    out.push(format!("disconnected:{t1},{t2};s={s}"));
                }
            }
        }
        for s in 1..=max_d {
            if t1 + s <= max_d {
                out.push(format!("disconnected:{t1};s={s}"));
            }
        }
    }
    for case in ["i", "ii", "iii", "iv", "v"] {
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let d = match case {
                        "i" => a + b + c,
                        "ii" | "iv" => a + b + c + 1,
                        "iii" => a + b + c + 2,
                        _ => a + b + c + 3,
                    };
                    let ordered = match case {
                        "ii" => a <= b,
                        "iii" => a <= c,
                        _ => a <= b && b <= c,
                    };
                    // Case (i) needs real pencils at every center.
                    let pencils = case != "i" || (a >= 3 && b >= 3 && c >= 3);
                    if d <= max_d && ordered && pencils {
                        out.push(format!("three-pencils:{case},{a},{b},{c}"));
                    }
                }
            }
        }
    }
    out
}

/// `d` lines with small integer coefficients, so that they tend to meet in
/// triple and higher points.
pub fn random_lines(d: usize, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut forms: Vec<LinearForm> = Vec::new();
        while forms.len() < d {
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let f = LinearForm::from_i64(&c).unwrap();
            if !forms.iter().any(|g| g.is_proportional(&f)) {
                forms.push(f);
            }
        }
        if let Ok(a) = Arrangement::new(2, forms) {
            return a;
        }
    }
}

/// The named corpus plus `randoms` seeded random arrangements with
/// `3 <= d <= max_d`.
pub fn corpus(max_d: usize, randoms: u64) -> Vec<(String, Arrangement)> {
    let mut out: Vec<(String, Arrangement)> =
        named_specs(max_d).into_iter().map(|s| (s.clone(), family(&s, 1))).collect();
    for seed in 0..randoms {
        let d = 3 + (seed as usize) % (max_d - 2);
        out.push((format!("random:{d}@{seed}"), random_lines(d, seed)));
    }
    out
}

fn det3(m: [[&Rational; 3]; 3]) -> Rational {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Whether `c` lies in the span of `a` and `b`, by the vanishing of every
/// maximal minor of the 3-row coefficient matrix.
fn dependent(a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    let k = a.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let m = [[&a[i], &a[j], &a[l]], [&b[i], &b[j], &b[l]], [&c[i], &c[j], &c[l]]];
                if !det3(m).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Codimension-two flats recomputed from the coefficients alone: the flat
/// spanned by hyperplanes `i` and `j` contains `k` exactly when the three
/// forms are linearly dependent. Sorted member lists, sorted.
pub fn independent_flats(a: &Arrangement) -> Vec<Vec<usize>> {
    let forms: Vec<&[Rational]> = a.forms().iter().map(|f| f.coeffs()).collect();
    let d = forms.len();
    let mut flats = BTreeSet::new();
    for i in 0..d {
        for j in i + 1..d {
            let members: Vec<usize> = (0..d)
                .filter(|&k| k == i || k == j || dependent(forms[i], forms[j], forms[k]))
                .collect();
            flats.insert(members);
        }
    }
    flats.into_iter().collect()
}
