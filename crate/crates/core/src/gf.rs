//! Arithmetic in GF(q) for q = p^r <= 256.
//!
//! Elements are plain table indices in `[0, q)`. For r > 1 an index is the
//! radix-p encoding of the polynomial representative, constant term in the
//! least significant digit, so `x` is the index `p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// A field element, stored as its table index.
pub type Elem = u8;

pub const MAX_Q: usize = 256;

pub struct Field {
    q: usize,
    p: usize,
    r: usize,
    /// Coefficients of the monic modulus, constant term first, leading 1 last.
    modulus: Option<Vec<u8>>,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u8>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;

        let modulus = if r == 1 {
            None
        } else {
            Some(smallest_irreducible(p, r))
        };
        let poly_mul = |a: usize, b: usize| -> usize {
            match &modulus {
                None => a * b % p,
                Some(f) => encode(&poly_mulmod(&decode(a, p, r), &decode(b, p, r), f, p), p),
            }
        };

        // smallest primitive element, powers generated by polynomial multiplication
        let (generator, exp) = (1..q)
            .find_map(|g| {
                let mut powers = Vec::with_capacity(q - 1);
                let mut x = 1usize;
                loop {
                    powers.push(x as Elem);
                    x = poly_mul(x, g);
                    if x == 1 {
                        break;
                    }
                }
                (powers.len() == q - 1).then_some((g as Elem, powers))
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut log = vec![0u8; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u8;
        }

        let mut add = vec![0; q * q];
        let mut neg = vec![0; q];
        for a in 0..q {
            let da = decode(a, p, r);
            for b in 0..q {
                let db = decode(b, p, r);
                let s: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| ((x as usize + y as usize) % p) as u8).collect();
                add[a * q + b] = encode(&s, p) as Elem;
            }
            let n: Vec<u8> = da.iter().map(|&x| ((p - x as usize) % p) as u8).collect();
            neg[a] = encode(&n, p) as Elem;
        }

        let order = q - 1;
        let mut mul = vec![0; q * q];
        for a in 1..q {
            for b in 1..q {
                mul[a * q + b] = exp[(log[a] as usize + log[b] as usize) % order];
            }
        }
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = exp[(order - log[a] as usize) % order];
        }

        let field = Field {
            q,
            p,
            r,
            modulus,
            generator,
            exp,
            log,
            add,
            mul,
            neg,
            inv,
        };
        field.check_tables();
        Ok(field)
    }

    fn check_tables(&self) {
        let mut seen = vec![false; self.q];
        for &e in &self.exp {
            assert!(e != 0 && !seen[e as usize], "exp table is not a bijection");
            seen[e as usize] = true;
        }
        for a in 1..self.q {
            assert_eq!(self.exp[self.log[a] as usize] as usize, a);
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn is_prime(&self) -> bool {
        self.r == 1
    }

    /// Modulus coefficients, constant term first. `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(|a| a as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `g^i` for the table generator `g`.
    pub fn exp(&self, i: usize) -> Elem {
        self.exp[i % (self.q - 1)]
    }

    pub fn log(&self, a: Elem) -> Option<usize> {
        (a != 0).then(|| self.log[a as usize] as usize)
    }

    /// Inverse of a value already known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Shared, lazily built field for `q`. Fields are deterministic, so one
/// instance per size is enough for the whole process.
pub fn field(q: usize) -> Result<&'static Field> {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static Field>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&q) {
        return Ok(f);
    }
    let built: &'static Field = Box::leak(Box::new(Field::new(q)?));
    Ok(*cache.lock().unwrap().entry(q).or_insert(built))
}

/// `(p, r)` with `q = p^r`, or `None` if `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn decode(mut a: usize, p: usize, r: usize) -> Vec<u8> {
    let mut digits = vec![0u8; r];
    for d in digits.iter_mut() {
        *d = (a % p) as u8;
        a /= p;
    }
    digits
}

fn encode(digits: &[u8], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
}

/// Product of two polynomials of degree < r, reduced modulo a monic `f` of degree r.
fn poly_mulmod(a: &[u8], b: &[u8], f: &[u8], p: usize) -> Vec<u8> {
    let r = f.len() - 1;
    let mut prod = vec![0usize; 2 * r];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as usize * y as usize) % p;
        }
    }
    for deg in (r..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &fk) in f.iter().enumerate() {
            let idx = deg - r + k;
            prod[idx] = (prod[idx] + (p - c) * fk as usize) % p;
        }
    }
    prod[..r].iter().map(|&c| c as u8).collect()
}

/// Remainder of `a` modulo a monic `d`; both little-endian coefficient lists.
fn poly_rem(a: &[u8], d: &[u8], p: usize) -> Vec<u8> {
    let mut rem: Vec<usize> = a.iter().map(|&c| c as usize).collect();
    let dd = d.len() - 1;
    while rem.len() > dd {
        let top = rem.len() - 1;
        let c = rem[top];
        if c != 0 {
            for (k, &dk) in d.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = (rem[idx] + (p - c) * dk as usize) % p;
            }
        }
        rem.pop();
    }
    rem.into_iter().map(|c| c as u8).collect()
}

fn is_irreducible(f: &[u8], p: usize) -> bool {
    let r = f.len() - 1;
    for deg in 1..=r / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut d = decode(low, p, deg);
            d.push(1);
            if poly_rem(f, &d, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Monic irreducible polynomial of degree `r` whose lower coefficients have
/// the smallest radix-p encoding.
fn smallest_irreducible(p: usize, r: usize) -> Vec<u8> {
    (0..p.pow(r as u32))
        .map(|low| {
            let mut f = decode(low, p, r);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent polynomial product, no tables involved.
    fn oracle_mul(f: &Field, a: usize, b: usize) -> usize {
        let (p, r) = (f.p, f.r);
        match f.modulus() {
            None => a * b % p,
            Some(m) => encode(&poly_mulmod(&decode(a, p, r), &decode(b, p, r), m, p), p),
        }
    }

    #[test]
    fn prime_field_has_no_modulus() {
        let f = Field::new(3).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (3, 1));
        assert!(f.modulus().is_none());
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        // the only monic quadratic over GF(2) without a root
        let roots = |c0: u8, c1: u8| (0..2u8).any(|x| (x * x + c1 * x + c0).is_multiple_of(2));
        let irreducible: Vec<_> = (0..4u8)
            .map(|v| (v & 1, v >> 1))
            .filter(|&(c0, c1)| !roots(c0, c1))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn rejects_composite_and_out_of_range() {
        assert!(matches!(Field::new(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(Field::new(12), Err(Error::NotPrimePower(12))));
        assert!(matches!(Field::new(1), Err(Error::UnsupportedField(1))));
        assert!(matches!(Field::new(257), Err(Error::UnsupportedField(257))));
    }

    #[test]
    fn small_examples() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert!(matches!(f3.inv(0), Err(Error::DivisionByZero)));

        // x is index 2, x + 1 is index 3
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
    }

    #[test]
    fn modulus_choices() {
        assert_eq!(Field::new(8).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(Field::new(9).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(Field::new(16).unwrap().modulus(), Some(&[1, 1, 0, 0, 1][..]));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                // p-fold sum vanishes
                let s = (0..f.characteristic()).fold(0, |acc, _| f.add(acc, a));
                assert_eq!(s, 0);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b) as usize, oracle_mul(&f, a as usize, b as usize));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn log_exp_roundtrip_all_supported() {
        for q in (2..=MAX_Q).filter(|&q| prime_power(q).is_some()) {
            let f = Field::new(q).unwrap();
            for a in f.nonzero() {
                assert_eq!(f.exp(f.log(a).unwrap()), a);
            }
            assert_eq!(f.log(0), None);
        }
    }

    #[test]
    fn cache_returns_same_instance() {
        let a = field(9).unwrap();
        let b = field(9).unwrap();
        assert!(std::ptr::eq(a, b));
    }
}
