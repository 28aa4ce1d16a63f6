//! Arithmetic in GF(p^k) as polynomials over Z_p modulo a fixed monic
//! irreducible polynomial.
//!
//! Elements are coefficient tuples `(c_0, .., c_{k-1})` for
//! `c_0 + c_1 x + .. + c_{k-1} x^{k-1}`. The canonical element order reads
//! the tuple from the highest coefficient down, with the constant term in
//! the last position, and compares lexicographically; it coincides with the
//! integer index `sum c_i p^i`.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::perm::primes::{is_prime, prime_divisors};

/// `p^k` for the largest supported field.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

/// Default moduli for the extension fields used by the catalog.
fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        // x^2 + 2x + 2
        (3, 2) => Some(vec![2, 2, 1]),
        // x^3 + 2x + 1
        (3, 3) => Some(vec![1, 2, 0, 1]),
        _ => None,
    }
}

impl FieldSpec {
    /// GF(p^k) with the documented default modulus (`x` for prime fields;
    /// the least irreducible monic polynomial where no default is listed).
    pub fn new(p: u32, k: u32) -> Result<Arc<FieldSpec>> {
        validate_pk(p, k)?;
        let modulus = match default_modulus(p, k) {
            Some(m) => m,
            None if k == 1 => vec![0, 1],
            None => least_irreducible(p, k),
        };
        FieldSpec::with_modulus(p, k, modulus)
    }

    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>> {
        validate_pk(p, k)?;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return invalid("modulus must be monic of degree k");
        }
        if modulus.iter().any(|&c| c >= p) {
            return invalid("modulus coefficients must be reduced mod p");
        }
        if !is_irreducible(p, &modulus) {
            return invalid(format!("modulus {} is reducible over Z_{p}", poly_string(&modulus)));
        }
        Ok(Arc::new(FieldSpec { p, k, modulus }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Prime-subfield element `n mod p`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Element with canonical index `index` (base-`p` digits, constant term
    /// least significant).
    pub fn element(&self, mut index: u32) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        e
    }

    pub fn index_of(&self, e: &FieldElement) -> u32 {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return invalid("coefficient tuple must have length k with entries below p");
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let k = self.k as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce using x^k = -(m_0 + .. + m_{k-1} x^{k-1})
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        FieldElement {
            coeffs: prod[..k].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via `a^(q-2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        Ok(self.pow(a, self.order() as u64 - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    pub fn multiplicative_order(&self, a: &FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.order() as u64 - 1;
        let mut ord = n;
        for p in prime_divisors(n as u128) {
            let p = p as u64;
            while ord % p == 0 && self.pow(a, ord / p) == self.one() {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// Least element (canonical order) of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        let target = self.order() as u64 - 1;
        (1..self.order())
            .map(|i| self.element(i))
            .find(|e| self.multiplicative_order(e) == Some(target))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, (self.order() as u64 - 1) / 2) == self.one()
    }
}

/// Field operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

/// Applies `op` to one or two operands (`Neg`, `Inv`, `Pow` take one).
pub fn field_arith(spec: &FieldSpec, op: FieldOp, operands: &[&FieldElement]) -> Result<FieldElement> {
    for e in operands {
        if e.coeffs.len() != spec.k as usize || e.coeffs.iter().any(|&c| c >= spec.p) {
            return invalid("operand does not belong to this field");
        }
    }
    let arity = match op {
        FieldOp::Add | FieldOp::Mul => 2,
        _ => 1,
    };
    if operands.len() != arity {
        return invalid(format!("{op:?} takes {arity} operand(s)"));
    }
    match op {
        FieldOp::Add => Ok(spec.add(operands[0], operands[1])),
        FieldOp::Mul => Ok(spec.mul(operands[0], operands[1])),
        FieldOp::Neg => Ok(spec.neg(operands[0])),
        FieldOp::Inv => spec.inv(operands[0]),
        FieldOp::Pow(e) => Ok(spec.pow(operands[0], e)),
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_string(&self.coeffs))
    }
}

fn validate_pk(p: u32, k: u32) -> Result<()> {
    if !is_prime(p as u128) {
        return invalid(format!("{p} is not prime"));
    }
    if k == 0 {
        return invalid("extension degree must be at least 1");
    }
    match (p as u64).checked_pow(k) {
        Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
        _ => invalid(format!("field order {p}^{k} exceeds {MAX_FIELD_ORDER}")),
    }
}

fn poly_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &x) in c.iter().enumerate().rev() {
        if x == 0 {
            continue;
        }
        let t = match (i, x) {
            (0, _) => format!("{x}"),
            (1, 1) => "x".to_string(),
            (1, _) => format!("{x}x"),
            (_, 1) => format!("x^{i}"),
            _ => format!("{x}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Remainder of `a` modulo monic `m` over Z_p (coefficients low first).
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    let p = p as u64;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * mi as u64 % p) % p;
        }
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Exhaustive check: no monic factor of degree `1..=deg/2` divides `m`.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                f.push((t % p as u64) as u32);
                t /= p as u64;
            }
            f.push(1);
            if poly_rem(p, m, &f).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut t = idx;
        for _ in 0..k {
            f.push((t % p as u64) as u32);
            t /= p as u64;
        }
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
