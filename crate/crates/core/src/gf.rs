//! Arithmetic in prime-power finite fields GF(p^m).
//!
//! Elements are integers in `[0, p^m)` whose base-`p` digits are the
//! polynomial coefficients (digit `i` is the coefficient of `x^i`). The
//! modulus is the smallest monic irreducible polynomial of degree `m` when
//! its lower coefficients are read as a base-`p` integer, so the same
//! `(p, m)` always yields the same field.
//!
//! ```
//! use oa_control::gf::Field;
//!
//! let gf4 = Field::new(2, 2).unwrap();
//! let w = gf4.element(2); // x
//! assert_eq!(gf4.mul(w, w), gf4.element(3)); // x^2 = x + 1
//! ```

use crate::error::{Error, Result};

/// Maximum supported field order.
pub const MAX_ORDER: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn rep(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    /// Coefficients of the monic modulus, lowest degree first, length `m + 1`.
    modulus: Vec<u32>,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q = p^m` into `(p, m)` if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `num` modulo the monic `den`, coefficients mod `p`, lowest first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dd;
        for (i, &c) in den[..dd].iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
    }
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for deg in 1..=m / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut div = digits(low, p, deg);
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let order = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if order > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge { order });
        }
        let order = order as u32;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            (0..order)
                .map(|low| {
                    let mut poly = digits(low, p, m as usize);
                    poly.push(1);
                    poly
                })
                .find(|poly| is_irreducible(poly, p))
                .ok_or(Error::NoIrreducible { p, m })?
        };
        let mut field = Field {
            p,
            m,
            order,
            modulus,
            mul_table: Vec::new(),
            inv_table: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// Field of the given prime-power order.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        Self::new(p, m)
    }

    fn build_tables(&mut self) {
        let q = self.order as usize;
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in a..q {
                let v = self.mul_slow(a as u32, b as u32);
                mul[a * q + b] = v;
                mul[b * q + a] = v;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..q {
            inv[a] = (1..q as u32).find(|&b| mul[a * q + b as usize] == 1).unwrap();
        }
        self.mul_table = mul;
        self.inv_table = inv;
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p, self.m as usize);
        let da = digits(a, p, m);
        let db = digits(b, p, m);
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, p);
        undigits(&rem[..m.min(rem.len())], p)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients, lowest degree first (monic, length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Wraps `rep` as an element. Panics if `rep >= order`.
    pub fn element(&self, rep: u32) -> FieldElement {
        assert!(rep < self.order, "element {rep} outside GF({})", self.order);
        FieldElement(rep)
    }

    pub fn try_element(&self, rep: u32) -> Result<FieldElement> {
        if rep < self.order {
            Ok(FieldElement(rep))
        } else {
            Err(Error::InvalidParameter(format!(
                "element {rep} outside GF({})",
                self.order
            )))
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.m {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_table[(a.0 * self.order + b.0) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse(self.order));
        }
        Ok(FieldElement(self.inv_table[a.0 as usize]))
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        u.iter()
            .zip(v)
            .fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}
