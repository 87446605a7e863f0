//! Exact character tables, with the class-function toolkit built on them.

mod dixon;
mod linear;
mod modq;

pub use dixon::{character_table, class_structure_constants, dixon_prime};
pub use linear::linear_characters;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::{lcm, p_part, units_mod};
use crate::cyclotomic::{CycAccumulator, CycInt, CycNum};
use crate::error::{Error, Result};
use crate::group::{rational_p_section, ClassSummary, Group, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    pub values: Vec<CycInt>,
}

impl Character {
    pub fn degree(&self) -> u64 {
        self.values[0].as_int().expect("degree is a rational integer") as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(CycInt::is_one)
    }

    pub fn to_class_function(&self) -> ClassFunction {
        ClassFunction { values: self.values.iter().cloned().map(CycNum::from).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn zero(r: usize) -> Self {
        ClassFunction { values: vec![CycNum::zero(); r] }
    }

    /// 1 on the given classes, 0 elsewhere.
    pub fn indicator(r: usize, classes: &[usize]) -> Self {
        let mut f = Self::zero(r);
        for &c in classes {
            f.values[c] = CycInt::one().into();
        }
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, t: i64) -> Self {
        ClassFunction { values: self.values.iter().map(|a| a.scale(t)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn conj(&self) -> Self {
        ClassFunction { values: self.values.iter().map(CycNum::conj).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNum::is_zero)
    }
}

/// Integer combination of the irreducibles of a table, by character index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualChar {
    pub coeffs: Vec<i64>,
}

impl VirtualChar {
    pub fn to_class_function(&self, t: &CharTable) -> ClassFunction {
        let r = t.num_classes();
        let values = (0..r)
            .map(|k| {
                let mut acc = CycAccumulator::new(t.exponent);
                for (c, &a) in self.coeffs.iter().enumerate() {
                    acc.add_scaled(&t.characters[c].values[k], a);
                }
                acc.finish().into()
            })
            .collect();
        ClassFunction { values }
    }
}

/// Irreducible characters on the classes of a group, plus the class data they need.
///
/// Tables built from a group and tables imported from JSON have the same shape; nothing
/// here refers back to the elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassSummary>,
    pub characters: Vec<Character>,
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(Character::degree).collect()
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        self.classes[k].power_map[(self.exponent - 1) as usize]
    }

    /// ω_χ(K_c) = h_c·χ(c)/χ(1).
    pub fn central_character(&self, chi: usize, c: usize) -> Result<CycInt> {
        let ch = &self.characters[chi];
        ch.values[c]
            .scale(self.classes[c].size as i64)
            .div_exact_int(ch.degree() as i64)
            .ok_or_else(|| {
                Error::IntegralityViolation(format!("character {chi} at class {c} in {}", self.name))
            })
    }

    pub fn is_rational(&self) -> bool {
        self.characters.iter().all(|c| c.values.iter().all(|v| v.as_int().is_some()))
    }

    fn pairing(&self, a: &ClassFunction, b: &ClassFunction, keep: impl Fn(usize) -> bool) -> CycNum {
        let mut acc = CycNum::zero();
        for k in (0..self.num_classes()).filter(|&k| keep(k)) {
            if a.values[k].is_zero() || b.values[k].is_zero() {
                continue;
            }
            acc = acc.add(&a.values[k].mul(&b.values[k].conj()).scale(self.classes[k].size as i64));
        }
        acc.div_int(self.order as i64)
    }

    /// (1/|G|) Σ_g α(g)·conj(β(g)).
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> CycNum {
        self.pairing(a, b, |_| true)
    }

    /// The same sum restricted to p-regular elements.
    pub fn inner_product_p_regular(&self, a: &ClassFunction, b: &ClassFunction, p: u64) -> CycNum {
        self.pairing(a, b, |k| self.classes[k].elt_order % p != 0)
    }

    /// Coordinates of `a` against every irreducible.
    pub fn decompose(&self, a: &ClassFunction) -> Vec<CycNum> {
        self.characters.iter().map(|c| self.inner_product(a, &c.to_class_function())).collect()
    }

    /// |C_G(x)|_p · [δ_{T_p(x)}, χ].
    pub fn section_indicator_pairing(&self, chi: usize, x: usize, p: u64) -> Result<CycNum> {
        let section = rational_p_section(&self.classes, x, p)?;
        let ind = ClassFunction::indicator(self.num_classes(), &section);
        let ip = self.inner_product(&ind, &self.characters[chi].to_class_function());
        Ok(ip.scale(p_part(self.classes[x].centralizer_order, p) as i64))
    }

    /// Structural checks plus exact row and column orthogonality.
    pub fn validate(&self) -> Result<()> {
        let r = self.num_classes();
        let schema = |m: String| Err(Error::Schema(m));
        if r == 0 || self.classes[0].size != 1 || self.classes[0].elt_order != 1 {
            return schema("class 0 must be the identity class".into());
        }
        let e = self.classes.iter().fold(1, |acc, c| lcm(acc, c.elt_order));
        if e != self.exponent {
            return schema(format!("exponent {} does not match element orders", self.exponent));
        }
        if self.classes.iter().map(|c| c.size).sum::<u64>() != self.order {
            return schema("class sizes do not sum to the group order".into());
        }
        for (k, c) in self.classes.iter().enumerate() {
            if c.size * c.centralizer_order != self.order {
                return schema(format!("class {k}: size times centralizer order is not |G|"));
            }
            if c.power_map.len() != e as usize || c.power_map.iter().any(|&x| x >= r) {
                return schema(format!("class {k}: power map must have {e} entries below {r}"));
            }
            if c.power_map[0] != 0 || c.power_map[(1 % e) as usize] != k {
                return schema(format!("class {k}: power map must send 0 to the identity and 1 to itself"));
            }
        }
        if self.characters.len() != r {
            return schema(format!("{} characters for {r} classes", self.characters.len()));
        }
        for (i, ch) in self.characters.iter().enumerate() {
            if ch.values.len() != r {
                return schema(format!("character {i} has {} values", ch.values.len()));
            }
            if !matches!(ch.values[0].as_int(), Some(d) if d > 0) {
                return schema(format!("character {i} has no positive integer degree"));
            }
            if ch.values.iter().any(|v| e % v.modulus() != 0) {
                return schema(format!("character {i} has values outside ℚ(ζ_{e})"));
            }
        }
        // power maps must agree with the Galois action on every column
        for (k, c) in self.classes.iter().enumerate() {
            for r in units_mod(c.elt_order) {
                let l = c.power_map[r as usize];
                for (i, ch) in self.characters.iter().enumerate() {
                    if ch.values[k].galois(r as i64)? != ch.values[l] {
                        return schema(format!("character {i}: power map of class {k} at {r} is not Galois-consistent"));
                    }
                }
            }
        }
        let fail = |m: String| Err(Error::OrthogonalityFailure(m));
        let conj: Vec<Vec<CycInt>> =
            self.characters.iter().map(|c| c.values.iter().map(CycInt::conj).collect()).collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = CycAccumulator::new(e);
                for k in 0..r {
                    let prod = self.characters[i].values[k].mul(&conj[j][k]);
                    acc.add_scaled(&prod, self.classes[k].size as i64);
                }
                let want = if i == j { self.order as i64 } else { 0 };
                if acc.finish() != CycInt::from_int(want) {
                    return fail(format!("rows {i} and {j}"));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = CycAccumulator::new(e);
                for (ch, cj) in self.characters.iter().zip(&conj) {
                    acc.add_scaled(&ch.values[k].mul(&cj[l]), 1);
                }
                let want = if k == l { self.classes[k].centralizer_order as i64 } else { 0 };
                if acc.finish() != CycInt::from_int(want) {
                    return fail(format!("columns {k} and {l}"));
                }
            }
        }
        Ok(())
    }
}

/// φ^G for φ given on `h.members()` in order.
pub fn induce(g: &Group, h: &Subgroup, phi: &[CycInt]) -> ClassFunction {
    let r = g.classes().len();
    let mut sums: Vec<CycAccumulator> = (0..r).map(|_| CycAccumulator::new(g.exponent())).collect();
    for (&x, v) in h.members().iter().zip(phi) {
        sums[g.class_of(x)].add_scaled(v, 1);
    }
    let values = sums
        .into_iter()
        .zip(g.classes())
        .map(|(s, c)| CycNum::new(s.finish().scale(g.order() as i64), (c.size * h.order()) as i64))
        .collect();
    ClassFunction { values }
}

/// χ restricted to `h`, as values on `h.members()`.
pub fn restrict(g: &Group, h: &Subgroup, chi: &Character) -> Vec<CycInt> {
    h.members().iter().map(|&x| chi.values[g.class_of(x)].clone()).collect()
}

/// (1/|H|) Σ_{h∈H} α(h)·conj(β(h)) for functions on `h.members()`.
pub fn subgroup_inner_product(h: &Subgroup, a: &[CycInt], b: &[CycInt]) -> CycNum {
    let mut acc = CycInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(&y.conj()));
    }
    CycNum::new(acc, h.order() as i64)
}

/// The character table of `h`, with each irreducible also given on `h.members()`.
pub fn subgroup_characters(g: &Group, h: &Subgroup) -> Result<(CharTable, Vec<Vec<CycInt>>)> {
    let (sub, map) = h.to_group(g, &format!("{}/sub{}", g.name(), h.order()))?;
    let table = character_table(&sub)?;
    let back: HashMap<usize, usize> = map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let rows = table
        .characters
        .iter()
        .map(|ch| h.members().iter().map(|x| ch.values[sub.class_of(back[x])].clone()).collect())
        .collect();
    Ok((table, rows))
}
