//! Dense univariate polynomials over Z, stored as coefficient vectors
//! (index = degree, no trailing zeros). Used as the rows of `IntPoly`.

use std::cmp::Ordering;

use rug::integer::Order;
use rug::{Assign, Integer};

pub type UPoly = Vec<Integer>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}


pub fn add(a: &[Integer], b: &[Integer]) -> UPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: UPoly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub fn sub_assign(a: &mut UPoly, b: &[Integer]) {
    if a.len() < b.len() {
        a.resize(b.len(), Integer::new());
    }
    for (o, s) in a.iter_mut().zip(b) {
        *o -= s;
    }
    trim(a);
}

pub fn sub(a: &[Integer], b: &[Integer]) -> UPoly {
    let mut out = a.to_vec();
    sub_assign(&mut out, b);
    out
}

pub fn neg(a: &[Integer]) -> UPoly {
    a.iter().map(|c| Integer::from(-c)).collect()
}

pub fn scale(a: &[Integer], c: &Integer) -> UPoly {
    if *c == 0 {
        return Vec::new();
    }
    a.iter().map(|x| Integer::from(x * c)).collect()
}

pub fn mul(a: &[Integer], b: &[Integer]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale(b, &a[0]);
    }
    if b.len() == 1 {
        return scale(a, &b[0]);
    }
    if a.len().min(b.len()) >= KRONECKER_MIN {
        return mul_kronecker(a, b);
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    let mut tmp = Integer::new();
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            tmp.assign(x * y);
            out[i + j] += &tmp;
        }
    }
    trim(&mut out);
    out
}

/// Below this length schoolbook multiplication is used.
const KRONECKER_MIN: usize = 12;

fn max_bits(a: &[Integer]) -> usize {
    a.iter().map(|c| c.significant_bits() as usize).max().unwrap_or(0)
}

/// Σ a_i·2^{64·words·i} for nonnegative a_i below 2^{64·words}.
fn pack(a: &[Integer], words: usize) -> Integer {
    let mut digits = vec![0u64; a.len() * words];
    for (i, c) in a.iter().enumerate() {
        let d = c.to_digits::<u64>(Order::Lsf);
        digits[i * words..i * words + d.len()].copy_from_slice(&d);
    }
    Integer::from_digits(&digits, Order::Lsf)
}

fn unpack(x: &Integer, words: usize, n: usize) -> Vec<Integer> {
    let d = x.to_digits::<u64>(Order::Lsf);
    (0..n)
        .map(|i| {
            let lo = (i * words).min(d.len());
            let hi = ((i + 1) * words).min(d.len());
            Integer::from_digits(&d[lo..hi], Order::Lsf)
        })
        .collect()
}

/// Splits into nonnegative parts with a = pos − neg.
fn split_signs(a: &[Integer]) -> (UPoly, UPoly) {
    let pos = a.iter().map(|c| if c.cmp0() == Ordering::Greater { c.clone() } else { Integer::new() }).collect();
    let neg = a.iter().map(|c| if c.cmp0() == Ordering::Less { Integer::from(-c) } else { Integer::new() }).collect();
    (pos, neg)
}

/// Multiplication by Kronecker substitution. With a = a⁺ − a⁻ and
/// b = b⁺ − b⁻, ab = 2(a⁺b⁺ + a⁻b⁻) − (a⁺ + a⁻)(b⁺ + b⁻), each product
/// having nonnegative coefficients.
fn mul_kronecker(a: &[Integer], b: &[Integer]) -> UPoly {
    let n = a.len() + b.len() - 1;
    let bits = max_bits(a) + max_bits(b) + usize::BITS as usize - a.len().min(b.len()).leading_zeros() as usize + 1;
    let words = bits.div_ceil(64);
    let (ap, an) = split_signs(a);
    let (bp, bn) = split_signs(b);
    let (xp, xn, yp, yn) = (pack(&ap, words), pack(&an, words), pack(&bp, words), pack(&bn, words));
    let sum = Integer::from(&xp + &xn) * Integer::from(&yp + &yn);
    let p1 = unpack(&(xp * yp), words, n);
    let p2 = unpack(&(xn * yn), words, n);
    let s = unpack(&sum, words, n);
    let mut out: UPoly = p1
        .into_iter()
        .zip(p2)
        .zip(s)
        .map(|((x, y), z)| {
            let mut c = x + y;
            c <<= 1;
            c - z
        })
        .collect();
    trim(&mut out);
    out
}

/// Adds `a * b` into `acc`.
pub fn mul_add_assign(acc: &mut UPoly, a: &[Integer], b: &[Integer]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let n = a.len() + b.len() - 1;
    if acc.len() < n {
        acc.resize(n, Integer::new());
    }
    let mut tmp = Integer::new();
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            tmp.assign(x * y);
            acc[i + j] += &tmp;
        }
    }
    trim(acc);
}

pub fn content(a: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for c in a {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    g
}

pub fn max_norm(a: &[Integer]) -> Integer {
    a.iter().map(|c| Integer::from(c.abs_ref())).max().unwrap_or_default()
}

pub fn eval(a: &[Integer], x: &Integer) -> Integer {
    let mut acc = Integer::new();
    for c in a.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn divide_scalar_exact(a: &[Integer], c: &Integer) -> UPoly {
    a.iter().map(|x| Integer::from(x.div_exact_ref(c))).collect()
}

/// Exact quotient a / b over Z, or `None` if b does not divide a.
pub fn div_exact(a: &[Integer], b: &[Integer]) -> Option<UPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    if b.len() == 1 {
        let c = &b[0];
        let mut out = Vec::with_capacity(a.len());
        for x in a {
            if !x.is_divisible(c) {
                return None;
            }
            out.push(Integer::from(x.div_exact_ref(c)));
        }
        return Some(out);
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![Integer::new(); a.len() - db];
    let mut tmp = Integer::new();
    for k in (0..q.len()).rev() {
        let lead = &r[k + db];
        if *lead == 0 {
            continue;
        }
        if !lead.is_divisible(lb) {
            return None;
        }
        let t = Integer::from(lead.div_exact_ref(lb));
        for (j, y) in b.iter().enumerate() {
            tmp.assign(&t * y);
            r[k + j] -= &tmp;
        }
        q[k] = t;
    }
    if r.iter().any(|c| *c != 0) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

pub fn primitive(a: &[Integer]) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().cmp0() == Ordering::Less {
        c = -c;
    }
    divide_scalar_exact(a, &c)
}

/// Symmetric xi-adic expansion of an integer into polynomial coefficients.
pub fn xi_adic(mut v: Integer, xi: &Integer) -> UPoly {
    let half = Integer::from(xi >> 1);
    let mut out = Vec::new();
    while v != 0 {
        let mut r = Integer::from(&v % xi);
        if r < 0 {
            r += xi;
        }
        if r > half {
            r -= xi;
        }
        v -= &r;
        v.div_exact_mut(xi);
        out.push(r);
    }
    trim(&mut out);
    out
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &[Integer], b: &[Integer]) -> UPoly {
    if a.is_empty() {
        return primitive_sign(b);
    }
    if b.is_empty() {
        return primitive_sign(a);
    }
    let cg = Integer::from(content(a).gcd_ref(&content(b)));
    let pa = primitive(a);
    let pb = primitive(b);
    if pa.len() == 1 || pb.len() == 1 {
        return vec![cg];
    }
    scale(&gcd_modular(&pa, &pb), &cg)
}

fn primitive_sign(a: &[Integer]) -> UPoly {
    if a.last().is_some_and(|c| c.cmp0() == Ordering::Less) {
        neg(a)
    } else {
        a.to_vec()
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

fn trim_mod(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd over Z/p.
fn gcd_mod_p(mut x: Vec<u64>, mut y: Vec<u64>, p: u64) -> Vec<u64> {
    trim_mod(&mut x);
    trim_mod(&mut y);
    while !y.is_empty() {
        let dy = y.len() - 1;
        let li = inv_mod(y[dy], p);
        while x.len() > dy {
            let dx = x.len() - 1;
            let f = x[dx] * li % p;
            if f != 0 {
                for (j, c) in y.iter().enumerate() {
                    let t = x[dx - dy + j] + p - f * c % p;
                    x[dx - dy + j] = t % p;
                }
            }
            x.pop();
            trim_mod(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&l) = x.last() {
        let li = inv_mod(l, p);
        for c in x.iter_mut() {
            *c = *c * li % p;
        }
    }
    x
}

/// Gcd of primitive polynomials of positive degree: images modulo word-sized
/// primes are combined by the Chinese remainder theorem until the lifted
/// candidate stabilizes and divides both inputs.
fn gcd_modular(a: &[Integer], b: &[Integer]) -> UPoly {
    let lc_a = a.last().unwrap();
    let lc_b = b.last().unwrap();
    let lc_g = Integer::from(lc_a.gcd_ref(lc_b));
    let mut prime = Integer::from(1u64 << 30);
    let mut acc: Vec<Integer> = Vec::new();
    let mut modulus = Integer::from(1);
    let mut deg = usize::MAX;
    let mut previous: Option<UPoly> = None;
    loop {
        prime.next_prime_mut();
        let p = prime.to_u32().unwrap();
        if lc_a.mod_u(p) == 0 || lc_b.mod_u(p) == 0 {
            continue;
        }
        let red = |v: &[Integer]| v.iter().map(|c| c.mod_u(p) as u64).collect::<Vec<u64>>();
        let g = gcd_mod_p(red(a), red(b), p as u64);
        let d = g.len() - 1;
        if d == 0 {
            return vec![Integer::from(1)];
        }
        if d > deg {
            continue;
        }
        let lg = lc_g.mod_u(p) as u64;
        let image: Vec<u64> = g.iter().map(|c| c * lg % p as u64).collect();
        if d < deg {
            deg = d;
            acc = image.iter().map(|&c| Integer::from(c)).collect();
            modulus = Integer::from(p);
            previous = None;
            continue;
        }
        // x ≡ acc (mod modulus), x ≡ image (mod p)
        let m_inv = inv_mod(modulus.mod_u(p) as u64, p as u64);
        for (x, &r) in acc.iter_mut().zip(&image) {
            let diff = (r + p as u64 - x.mod_u(p) as u64) % p as u64 * m_inv % p as u64;
            *x += Integer::from(&modulus * diff);
        }
        modulus *= p;
        let half = Integer::from(&modulus >> 1);
        let lifted: UPoly = acc.iter().map(|x| if *x > half { Integer::from(x - &modulus) } else { x.clone() }).collect();
        let candidate = primitive(&lifted);
        if previous.as_ref() == Some(&candidate) && div_exact(a, &candidate).is_some() && div_exact(b, &candidate).is_some() {
            return candidate;
        }
        previous = Some(candidate);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        let mut out: UPoly = v.iter().map(|&c| Integer::from(c)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn division_round_trip() {
        let a = p(&[1, 2, -3, 4]);
        let b = p(&[-5, 0, 7]);
        let ab = mul(&a, &b);
        assert_eq!(div_exact(&ab, &b).unwrap(), a);
        assert!(div_exact(&add(&ab, &p(&[1])), &b).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let g = p(&[3, -1, 2]);
        let a = mul(&g, &p(&[1, 1]));
        let b = mul(&g, &p(&[-1, 0, 5]));
        assert_eq!(gcd(&a, &b), g);
        assert_eq!(gcd(&scale(&a, &Integer::from(6)), &scale(&b, &Integer::from(4))), scale(&g, &Integer::from(2)));
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: UPoly = (0..40).map(|i| Integer::from((i * 7919 % 263) - 131) << (i % 5 * 40)).collect();
        let b: UPoly = (0..30).map(|i| Integer::from((i * 104729 % 977) - 400)).collect();
        let mut slow = vec![Integer::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] += Integer::from(x * y);
            }
        }
        trim(&mut slow);
        assert_eq!(mul_kronecker(&a, &b), slow);
    }

    #[test]
    fn gcd_of_large_products() {
        let g: UPoly = (0..25).map(|i| Integer::from(i * i - 17) << 70).chain([Integer::from(3)]).collect();
        let a = mul(&g, &(0..20).map(|i| Integer::from(i % 4 - 1)).collect::<Vec<_>>());
        let b = mul(&g, &(0..18).map(|i| Integer::from(5 - i)).collect::<Vec<_>>());
        assert_eq!(gcd(&a, &b), primitive(&g));
        let coprime = gcd(&p(&[1, 0, 1]), &p(&[1, 1]));
        assert_eq!(coprime, p(&[1]));
    }

    #[test]
    fn xi_adic_recovers_small_polynomials() {
        let a = p(&[-7, 3, 0, -2]);
        let xi = Integer::from(101);
        assert_eq!(xi_adic(eval(&a, &xi), &xi), a);
    }
}
