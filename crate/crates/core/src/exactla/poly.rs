//! Dense univariate polynomials, just enough to find eigenvalues in the
//! base field. Coefficients are stored lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn eval(p: &[Scalar], x: &Scalar, field: Field) -> Scalar {
    p.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c)
}

fn sub(a: &[Scalar], b: &[Scalar], field: Field) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(|| field.zero());
                let y = b.get(i).cloned().unwrap_or_else(|| field.zero());
                &x - &y
            })
            .collect(),
    )
}

fn mul(a: &[Scalar], b: &[Scalar], field: Field) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`, and the quotient.
fn divrem(a: &[Scalar], b: &[Scalar], field: Field) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv();
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * y);
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: Vec<Scalar>) -> Vec<Scalar> {
    let p = trim(p);
    match p.last() {
        Some(l) => {
            let inv = l.inv();
            p.iter().map(|c| c * &inv).collect()
        }
        None => p,
    }
}

fn gcd(a: &[Scalar], b: &[Scalar], field: Field) -> Vec<Scalar> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b, field);
        a = b;
        b = r;
    }
    monic(a)
}

fn powmod(base: &[Scalar], mut e: u64, m: &[Scalar], field: Field) -> Vec<Scalar> {
    let mut acc = vec![field.one()];
    let mut b = divrem(base, m, field).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(&mul(&acc, &b, field), m, field).1;
        }
        b = divrem(&mul(&b, &b, field), m, field).1;
        e >>= 1;
    }
    acc
}

/// Monic minimal polynomial of a square matrix, via the first linear
/// dependency among `I, A, A², ...`.
pub fn min_poly(a: &Matrix) -> Vec<Scalar> {
    let f = a.field();
    let n = a.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(f, n).entries().to_vec()];
    let mut cur = Matrix::identity(f, n);
    loop {
        cur = &cur * a;
        let target = cur.entries().to_vec();
        let cols = powers.len();
        let frame = Matrix::from_rows(f, powers.clone(), n * n).expect("square powers").transpose();
        if let Some(x) = frame.solve(&target) {
            let mut p: Vec<Scalar> = x.iter().map(|c| -c).collect();
            p.push(f.one());
            debug_assert_eq!(p.len(), cols + 1);
            return p;
        }
        powers.push(target);
    }
}

/// Distinct roots lying in the base field.
pub fn roots<R: Rng + ?Sized>(p: &[Scalar], field: Field, rng: &mut R) -> Vec<Scalar> {
    let p = monic(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = match field {
        Field::Rationals => rational_roots(&p, field),
        Field::Prime(q) if q <= 4096 => field
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| eval(&p, x, field).is_zero())
            .collect(),
        Field::Prime(q) => {
            // the product of the distinct linear factors is gcd(x^q - x, p)
            let x = vec![field.zero(), field.one()];
            let xq = powmod(&x, q as u64, &p, field);
            let g = gcd(&sub(&xq, &x, field), &p, field);
            let mut acc = Vec::new();
            split_linear(g, field, q, rng, &mut acc);
            acc
        }
    };
    out.sort_by_key(|s| s.to_string());
    out.dedup();
    out
}

/// Cantor–Zassenhaus splitting of a squarefree product of linear factors.
fn split_linear<R: Rng + ?Sized>(g: Vec<Scalar>, field: Field, q: u32, rng: &mut R, out: &mut Vec<Scalar>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(-&(&g[0] * &g[1].inv())),
        _ => loop {
            let a = field.random(rng, 0);
            let shifted = vec![a, field.one()];
            let h = powmod(&shifted, (q as u64 - 1) / 2, &g, field);
            let d = gcd(&sub(&h, &[field.one()], field), &g, field);
            if d.len() > 1 && d.len() < g.len() {
                let (other, _) = divrem(&g, &d, field);
                split_linear(d, field, q, rng, out);
                split_linear(monic(other), field, q, rng, out);
                return;
            }
        },
    }
}

fn rational_roots(p: &[Scalar], field: Field) -> Vec<Scalar> {
    // clear denominators
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.as_rational().expect("rational coefficients").denom());
    }
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let mut out = Vec::new();
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lowest > 0 {
        out.push(field.zero());
    }
    let ints = &ints[lowest..];
    if ints.len() <= 1 {
        return out;
    }
    let Some(nums) = divisors(&ints[0]) else {
        return out;
    };
    let Some(dens) = divisors(ints.last().unwrap()) else {
        return out;
    };
    let p = &p[lowest..];
    for a in &nums {
        for b in &dens {
            for sign in [1i64, -1] {
                let x = field.from_ratio(&(a * sign), b).expect("nonzero divisor");
                if eval(p, &x, field).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Positive divisors; gives up on integers too large to factor by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minimal_polynomial_of_jordan_block() {
        let q = Field::Rationals;
        let j = Matrix::from_i64_rows(q, &[&[2, 1], &[0, 2]]);
        // (x - 2)^2 = x^2 - 4x + 4
        assert_eq!(min_poly(&j), vec![q.from_i64(4), q.from_i64(-4), q.one()]);
        let d = Matrix::from_i64_rows(q, &[&[3, 0], &[0, 3]]);
        assert_eq!(min_poly(&d), vec![q.from_i64(-3), q.one()]);
    }

    #[test]
    fn rational_roots_found() {
        let q = Field::Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let p = vec![q.zero(), q.from_i64(-3), q.from_i64(5), q.from_i64(2)];
        let r = roots(&p, q, &mut rng);
        assert_eq!(r.len(), 3);
        assert!(r.contains(&q.from_ratio(&1.into(), &2.into()).unwrap()));
        // x^2 + 1 has none
        assert!(roots(&[q.one(), q.zero(), q.one()], q, &mut rng).is_empty());
    }

    #[test]
    fn prime_field_roots_both_regimes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [7u64, 65537] {
            let f = Field::prime(p).unwrap();
            // (x - 2)(x - 5)(x^2 + 1 or irreducible part ignored)
            let a = mul(&[f.from_i64(-2), f.one()], &[f.from_i64(-5), f.one()], f);
            let r = roots(&a, f, &mut rng);
            assert_eq!(r.len(), 2, "p = {p}");
        }
    }
}
