//! Concrete permutation groups: PSL(2,q), PGL(2,q) and their field
//! automorphism extensions on the projective line, plus small generic
//! families and regular representations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::perm::primes::prime_power;
use crate::perm::{PermGroup, Permutation};

/// A point of PG(1,q). Index 0 is infinity; field element `e` sits at
/// `1 + index_of(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjLinePoint {
    Infinity,
    Finite(FieldElement),
}

#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    field: Arc<FieldSpec>,
}

impl ProjectiveLine {
    pub fn new(q: u32) -> Result<ProjectiveLine> {
        let (p, k) = prime_power(q as u128)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Ok(ProjectiveLine {
            field: FieldSpec::new(p as u32, k)?,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.field.order() as usize + 1
    }

    pub fn points(&self) -> Vec<ProjLinePoint> {
        (0..self.size()).map(|i| self.point(i)).collect()
    }

    pub fn point(&self, index: usize) -> ProjLinePoint {
        if index == 0 {
            ProjLinePoint::Infinity
        } else {
            ProjLinePoint::Finite(self.field.element(index as u32 - 1))
        }
    }

    pub fn index(&self, point: &ProjLinePoint) -> usize {
        match point {
            ProjLinePoint::Infinity => 0,
            ProjLinePoint::Finite(e) => self.field.index_of(e) as usize + 1,
        }
    }

    /// `z -> (a z + b) / (c z + d)`.
    pub fn mobius(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> Result<Permutation> {
        let f = &self.field;
        let det = f.sub(&f.mul(a, d), &f.mul(b, c));
        if det.is_zero() {
            return Err(Error::Precondition("singular Mobius matrix (ad - bc = 0)".into()));
        }
        let mut image = Vec::with_capacity(self.size());
        for i in 0..self.size() {
            let out = match self.point(i) {
                ProjLinePoint::Infinity => {
                    if c.is_zero() {
                        ProjLinePoint::Infinity
                    } else {
                        ProjLinePoint::Finite(f.div(a, c)?)
                    }
                }
                ProjLinePoint::Finite(z) => {
                    let num = f.add(&f.mul(a, &z), b);
                    let den = f.add(&f.mul(c, &z), d);
                    if den.is_zero() {
                        ProjLinePoint::Infinity
                    } else {
                        ProjLinePoint::Finite(f.div(&num, &den)?)
                    }
                }
            };
            image.push(self.index(&out) as u32);
        }
        Permutation::from_images(image)
    }

    /// Whether the matrix lies in SL(2,q) up to scalars (determinant is a
    /// square).
    pub fn in_psl(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> bool {
        let f = &self.field;
        let det = f.sub(&f.mul(a, d), &f.mul(b, c));
        !det.is_zero() && f.is_square(&det)
    }

    /// `z -> z^p` extended by fixing infinity.
    pub fn frobenius(&self) -> Permutation {
        let image = (0..self.size())
            .map(|i| match self.point(i) {
                ProjLinePoint::Infinity => 0,
                ProjLinePoint::Finite(z) => self.index(&ProjLinePoint::Finite(self.field.frobenius(&z))) as u32,
            })
            .collect();
        Permutation::from_images(image).expect("Frobenius is a bijection")
    }

    fn mobius_parts(&self, a: i64, b: i64, c: i64, d: i64) -> [FieldElement; 4] {
        let f = &self.field;
        [f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)]
    }

    /// `{z -> z+1, z -> lambda z, z -> 1/z}` with lambda primitive.
    pub fn pgl2_generators(&self) -> Vec<Permutation> {
        let f = &self.field;
        let lambda = f.primitive_element();
        let [one, zero, _, _] = self.mobius_parts(1, 0, 0, 1);
        vec![
            self.mobius(&one, &one, &zero, &one).unwrap(),
            self.mobius(&lambda, &zero, &zero, &one).unwrap(),
            self.mobius(&zero, &one, &one, &zero).unwrap(),
        ]
    }

    /// `{z -> z+1, z -> lambda^2 z, z -> -1/z}`.
    pub fn psl2_generators(&self) -> Vec<Permutation> {
        let f = &self.field;
        let lambda = f.primitive_element();
        let lambda2 = f.mul(&lambda, &lambda);
        let one = f.one();
        let zero = f.zero();
        let minus_one = f.neg(&one);
        let gens = [
            (one.clone(), one.clone(), zero.clone(), one.clone()),
            (lambda2, zero.clone(), zero.clone(), one.clone()),
            (zero.clone(), minus_one, one.clone(), zero.clone()),
        ];
        gens.iter()
            .map(|(a, b, c, d)| {
                debug_assert!(self.in_psl(a, b, c, d) || f.characteristic() == 2);
                self.mobius(a, b, c, d).unwrap()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Psl2,
    Pgl2,
    #[serde(rename = "PGAMMAL2")]
    PGammaL2,
    Psl2ExtByFieldAut,
    Sym,
    Alt,
    Cyclic,
    Dihedral,
    ElemAbelian,
    RegularRep,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        let norm = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match norm.as_str() {
            "psl2" => Family::Psl2,
            "pgl2" => Family::Pgl2,
            "pgammal2" | "pgaml2" => Family::PGammaL2,
            "psl2extbyfieldaut" | "psl2ext" | "psl2fieldaut" => Family::Psl2ExtByFieldAut,
            "sym" | "symmetric" => Family::Sym,
            "alt" | "alternating" => Family::Alt,
            "cyclic" => Family::Cyclic,
            "dihedral" => Family::Dihedral,
            "elemabelian" => Family::ElemAbelian,
            "regularrep" | "regular" => Family::RegularRep,
            _ => return invalid(format!("unknown group family '{s}'")),
        })
    }
}

/// How to build a catalog group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupRecipe {
    /// Projective families over GF(q).
    Projective { family: Family, q: u32 },
    /// `Sym`, `Alt`, `Cyclic`, `Dihedral` (on `n` points; the dihedral group
    /// of the n-gon has order `2n`).
    Degree { family: Family, n: usize },
    /// Regular representation of `Z_p^k`.
    ElemAbelian { p: u32, k: u32 },
    /// Regular representation of `Z_{m_1} x .. x Z_{m_r}`.
    AbelianRegular { moduli: Vec<usize> },
}

impl GroupRecipe {
    pub fn psl2(q: u32) -> Self {
        GroupRecipe::Projective {
            family: Family::Psl2,
            q,
        }
    }

    pub fn pgl2(q: u32) -> Self {
        GroupRecipe::Projective {
            family: Family::Pgl2,
            q,
        }
    }

    pub fn psl2_ext(q: u32) -> Self {
        GroupRecipe::Projective {
            family: Family::Psl2ExtByFieldAut,
            q,
        }
    }

    pub fn sym(n: usize) -> Self {
        GroupRecipe::Degree {
            family: Family::Sym,
            n,
        }
    }

    /// Classical order formula, for cross-checking.
    pub fn expected_order(&self) -> Option<u128> {
        match self {
            GroupRecipe::Projective { family, q } => {
                let q = *q as u128;
                let (_, k) = prime_power(q)?;
                let pgl = q * q * q - q;
                let psl = pgl / if q % 2 == 1 { 2 } else { 1 };
                Some(match family {
                    Family::Pgl2 => pgl,
                    Family::Psl2 => psl,
                    Family::PGammaL2 => pgl * k as u128,
                    Family::Psl2ExtByFieldAut => psl * k as u128,
                    _ => return None,
                })
            }
            GroupRecipe::Degree { family, n } => {
                let n = *n as u128;
                let fact: u128 = (1..=n).product();
                Some(match family {
                    Family::Sym => fact,
                    Family::Alt => (fact / 2).max(1),
                    Family::Cyclic => n,
                    Family::Dihedral => 2 * n,
                    _ => return None,
                })
            }
            GroupRecipe::ElemAbelian { p, k } => Some((*p as u128).pow(*k)),
            GroupRecipe::AbelianRegular { moduli } => Some(moduli.iter().map(|&m| m as u128).product()),
        }
    }
}

pub fn projective_line(q: u32) -> Result<Vec<ProjLinePoint>> {
    Ok(ProjectiveLine::new(q)?.points())
}

/// Builds the group described by `recipe`.
pub fn catalog_group(recipe: &GroupRecipe) -> Result<PermGroup> {
    match recipe {
        GroupRecipe::Projective { family, q } => {
            let line = ProjectiveLine::new(*q)?;
            let n = line.size();
            let k = line.field().degree();
            let gens = match family {
                Family::Psl2 => line.psl2_generators(),
                Family::Pgl2 => line.pgl2_generators(),
                Family::PGammaL2 | Family::Psl2ExtByFieldAut => {
                    if k == 1 {
                        return invalid("field automorphism extensions need a non-prime q");
                    }
                    let mut g = if *family == Family::PGammaL2 {
                        line.pgl2_generators()
                    } else {
                        line.psl2_generators()
                    };
                    g.push(line.frobenius());
                    g
                }
                other => return invalid(format!("{other:?} is not a projective family")),
            };
            PermGroup::new(n, gens)
        }
        GroupRecipe::Degree { family, n } => {
            let n = *n;
            if n == 0 {
                return invalid("degree must be positive");
            }
            let cycle: Vec<u32> = (0..n as u32).collect();
            let gens = match family {
                Family::Sym => {
                    if n == 1 {
                        vec![Permutation::identity(1)]
                    } else {
                        vec![
                            Permutation::from_cycles(n, &[&[0, 1]])?,
                            Permutation::from_cycles(n, &[&cycle])?,
                        ]
                    }
                }
                Family::Alt => {
                    if n < 3 {
                        vec![Permutation::identity(n)]
                    } else {
                        (2..n as u32)
                            .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
                            .collect::<Result<_>>()?
                    }
                }
                Family::Cyclic => vec![Permutation::from_cycles(n, &[&cycle])?],
                Family::Dihedral => {
                    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
                    vec![
                        Permutation::from_cycles(n, &[&cycle])?,
                        Permutation::from_images(refl)?,
                    ]
                }
                other => return invalid(format!("{other:?} is not a degree family")),
            };
            PermGroup::new(n, gens)
        }
        GroupRecipe::ElemAbelian { p, k } => {
            if !crate::perm::primes::is_prime(*p as u128) || *k == 0 {
                return invalid("elementary abelian recipe needs a prime p and k >= 1");
            }
            regular_abelian(&vec![*p as usize; *k as usize])
        }
        GroupRecipe::AbelianRegular { moduli } => regular_abelian(moduli),
    }
}

/// Regular action of `Z_{m_1} x .. x Z_{m_r}` on itself by translation. The
/// element `(x_1, .., x_r)` is the point with mixed-radix value (`x_1` most
/// significant).
pub fn regular_abelian(moduli: &[usize]) -> Result<PermGroup> {
    if moduli.is_empty() || moduli.iter().any(|&m| m == 0) {
        return invalid("moduli must be positive");
    }
    let order: usize = moduli.iter().product();
    if order as u128 > crate::perm::DEFAULT_ELEMENT_CAP {
        return Err(Error::ResourceLimit {
            what: "regular representation order",
            actual: order as u128,
            cap: crate::perm::DEFAULT_ELEMENT_CAP,
        });
    }
    let r = moduli.len();
    let mut gens = Vec::new();
    for j in 0..r {
        let image: Vec<u32> = (0..order)
            .map(|pt| {
                let mut digits = decode(pt, moduli);
                digits[j] = (digits[j] + 1) % moduli[j];
                encode(&digits, moduli) as u32
            })
            .collect();
        gens.push(Permutation::from_images(image)?);
    }
    PermGroup::with_known_order(order, gens, order as u128)
}

fn decode(mut pt: usize, moduli: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; moduli.len()];
    for j in (0..moduli.len()).rev() {
        digits[j] = pt % moduli[j];
        pt /= moduli[j];
    }
    digits
}

fn encode(digits: &[usize], moduli: &[usize]) -> usize {
    digits.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d)
}

/// Right regular representation of an arbitrary permutation group: point
/// `i` is the `i`-th element in enumeration order and `g` acts by
/// `x -> x g`.
pub fn regular_representation(g: &PermGroup, cap: u128) -> Result<PermGroup> {
    let elements = g.elements(cap)?;
    let index: std::collections::HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|s| {
            let image = elements.iter().map(|x| index[&x.then(s)] as u32).collect();
            Permutation::from_images(image)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::with_known_order(elements.len(), gens, elements.len() as u128)
}
