//! Fully enumerated permutation groups.
//!
//! Elements are indexed in lexicographic order of their image arrays, so the identity
//! is always element 0. Products follow the left-to-right convention: `mult(a, b)`
//! applies `a` first, then `b`.

mod aut;
mod bitset;
mod predicates;
mod sections;
mod subgroup;

pub use aut::{aut0_modulus, aut_data, aut_data_from_classes, aut_data_in_subgroup, AutData};
pub use bitset::BitSet;
pub use predicates::{is_2transitive, is_rational_classes, is_solvable};
pub use sections::{p_part_class, p_part_exponents, p_section, rational_p_section, ClassSummary};
pub use subgroup::{subgroups_up_to_conjugacy, Subgroup, DEFAULT_SUBGROUP_CAP};

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::{lcm, mod_inv, p_part as int_p_part, p_prime_part};
use crate::error::{Error, Result};

/// Default bound on |G| for enumeration.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// Groups at most this large get a full Cayley table.
const CAYLEY_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub tags: Vec<String>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Vec<usize>>) -> Self {
        GroupSpec { name: name.into(), degree, generators, tags: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Schema("degree must be at least 1".into()));
        }
        for (index, g) in self.generators.iter().enumerate() {
            let mut seen = vec![false; self.degree];
            let ok = g.len() == self.degree
                && g.iter().all(|&x| x < self.degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(Error::InvalidPermutation { index, degree: self.degree });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjClass {
    pub id: usize,
    pub rep: usize,
    pub members: Vec<usize>,
    pub size: u64,
    pub elt_order: u64,
    /// `power_map[k]` is the class of rep^k, for k in 0..e(G).
    pub power_map: Vec<usize>,
}

pub struct Group {
    spec: GroupSpec,
    degree: usize,
    perms: Vec<u32>,
    lookup: HashMap<Box<[u32]>, u32>,
    cayley: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<ConjClass>,
    exponent: u64,
    gens: Vec<usize>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.spec.name)
            .field("order", &self.order())
            .field("classes", &self.classes.len())
            .finish()
    }
}

pub fn build_group(spec: GroupSpec) -> Result<Group> {
    build_group_capped(spec, DEFAULT_SIZE_CAP)
}

pub fn build_group_capped(spec: GroupSpec, cap: usize) -> Result<Group> {
    spec.validate()?;
    let degree = spec.degree;
    let gen_perms: Vec<Vec<u32>> = spec
        .generators
        .iter()
        .map(|g| g.iter().map(|&x| x as u32).collect())
        .collect();

    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(e) = queue.pop_front() {
        for s in &gen_perms {
            let prod: Vec<u32> = e.iter().map(|&i| s[i as usize]).collect();
            if !seen.contains(&prod) {
                if seen.len() >= cap {
                    return Err(Error::SizeCapExceeded { cap });
                }
                seen.insert(prod.clone());
                queue.push_back(prod);
            }
        }
    }
    let mut elements: Vec<Vec<u32>> = seen.into_iter().collect();
    elements.sort_unstable();
    let order = elements.len();

    let lookup: HashMap<Box<[u32]>, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone().into_boxed_slice(), i as u32))
        .collect();
    let perms: Vec<u32> = elements.concat();

    let mut group = Group {
        gens: gen_perms.iter().map(|g| lookup[g.as_slice()] as usize).collect(),
        spec,
        degree,
        perms,
        lookup,
        cayley: None,
        inverse: Vec::new(),
        // placeholder so the Cayley stride is right before orders are known
        orders: vec![0; order],
        class_of: Vec::new(),
        classes: Vec::new(),
        exponent: 1,
    };
    if order <= CAYLEY_LIMIT {
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = group.compose_lookup(a, b) as u32;
            }
        }
        group.cayley = Some(table);
    }
    group.inverse = (0..order)
        .map(|a| {
            let pa = group.perm(a);
            let mut inv = vec![0u32; degree];
            for (i, &x) in pa.iter().enumerate() {
                inv[x as usize] = i as u32;
            }
            group.lookup[inv.as_slice()]
        })
        .collect();
    let orders = (0..order)
        .map(|a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = group.mult(x, a);
                k += 1;
            }
            k
        })
        .collect();
    group.orders = orders;
    group.exponent = group.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64));
    group.compute_classes();
    Ok(group)
}

impl Group {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.orders.len() as u64
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element indices of the spec's generators.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn perm(&self, a: usize) -> &[u32] {
        &self.perms[a * self.degree..(a + 1) * self.degree]
    }

    pub fn index_of(&self, perm: &[u32]) -> Option<usize> {
        self.lookup.get(perm).map(|&i| i as usize)
    }

    fn compose_lookup(&self, a: usize, b: usize) -> usize {
        let pb = self.perm(b);
        let prod: Vec<u32> = self.perm(a).iter().map(|&i| pb[i as usize]).collect();
        self.lookup[prod.as_slice()] as usize
    }

    /// The product `ab` (apply `a`, then `b`).
    pub fn mult(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.orders.len() + b] as usize,
            None => self.compose_lookup(a, b),
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `s⁻¹ x s`.
    pub fn conjugate(&self, x: usize, s: usize) -> usize {
        self.mult(self.mult(self.inverse(s), x), s)
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.elt_order(a);
        let mut r = 0;
        for _ in 0..k {
            r = self.mult(r, a);
        }
        r
    }

    pub fn elt_order(&self, a: usize) -> u64 {
        self.orders[a] as u64
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.orders.len()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_summaries(&self) -> Vec<ClassSummary> {
        self.classes
            .iter()
            .map(|c| ClassSummary {
                size: c.size,
                elt_order: c.elt_order,
                centralizer_order: self.order() / c.size,
                power_map: c.power_map.clone(),
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() as u64 == self.order()
    }

    fn compute_classes(&mut self) {
        let n = self.orders.len();
        let mut assigned = vec![u32::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if assigned[a] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            let mut members = vec![a];
            assigned[a] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &self.gens {
                    let y = self.conjugate(x, s);
                    if assigned[y] == u32::MAX {
                        assigned[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        raw.sort_by(|a, b| {
            let key = |m: &Vec<usize>| (self.orders[m[0]], std::cmp::Reverse(m.len()), m[0]);
            key(a).cmp(&key(b))
        });
        self.class_of = vec![0; n];
        for (id, members) in raw.iter().enumerate() {
            for &m in members {
                self.class_of[m] = id as u32;
            }
        }
        let e = self.exponent;
        self.classes = raw
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                let rep = members[0];
                let mut power_map = Vec::with_capacity(e as usize);
                let mut x = 0;
                for _ in 0..e {
                    power_map.push(self.class_of[x] as usize);
                    x = self.mult(x, rep);
                }
                ConjClass {
                    id,
                    rep,
                    size: members.len() as u64,
                    elt_order: self.orders[rep] as u64,
                    members,
                    power_map,
                }
            })
            .collect();
    }

    /// The commuting decomposition g = g_p·g_{p'} with o(g_p) the p-part of o(g).
    pub fn p_part(&self, g: usize, p: u64) -> (usize, usize) {
        let (a, b) = p_part_exponents(self.elt_order(g), p);
        (self.pow(g, a), self.pow(g, b))
    }

    /// Elements of ⟨g⟩.
    pub fn cyclic_members(&self, g: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = g;
        while x != 0 {
            out.push(x);
            x = self.mult(x, g);
        }
        out.sort_unstable();
        out
    }

    pub fn is_p_element(&self, g: usize, p: u64) -> bool {
        p_prime_part(self.elt_order(g), p) == 1
    }

    /// Content hash of the element list, stable across runs.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update((self.degree as u64).to_le_bytes());
        for x in &self.perms {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// CRT exponents: returns `(a, b)` with g_p = g^a and g_{p'} = g^b for o(g) = n.
pub(crate) fn crt_exponents(n: u64, p: u64) -> (u64, u64) {
    let np = int_p_part(n, p);
    let nq = n / np;
    // a ≡ 1 mod n_p, a ≡ 0 mod n_{p'}
    let a = if np == 1 { 0 } else { nq * mod_inv(nq % np, np).unwrap() % n };
    let b = if nq == 1 { 0 } else { np * mod_inv(np % nq, nq).unwrap() % n };
    (a, b)
}


#[cfg(test)]
mod tests {
    use super::test_groups::*;
    use super::*;

    #[test]
    fn trivial_group() {
        let g = build_group(GroupSpec::new("1", 1, vec![])).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert_eq!(g.classes().len(), 1);
        assert_eq!(g.classes()[0].power_map, vec![0]);
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(sym(5).order(), 120);
        assert_eq!(alt5().order(), 60);
        assert_eq!(sym(5).exponent(), 60);
    }

    #[test]
    fn invalid_generators_rejected() {
        let bad = GroupSpec::new("bad", 3, vec![vec![0, 0, 1]]);
        assert!(matches!(build_group(bad), Err(Error::InvalidPermutation { index: 0, .. })));
        let short = GroupSpec::new("bad", 3, vec![vec![1, 0]]);
        assert!(build_group(short).is_err());
    }

    #[test]
    fn size_cap_enforced() {
        let spec = sym(6).spec().clone();
        assert!(matches!(build_group_capped(spec, 100), Err(Error::SizeCapExceeded { cap: 100 })));
    }

    #[test]
    fn s3_classes() {
        let g = sym(3);
        let sizes: Vec<u64> = g.classes().iter().map(|c| c.size).collect();
        let orders: Vec<u64> = g.classes().iter().map(|c| c.elt_order).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(orders, vec![1, 2, 3]);
    }

    #[test]
    fn s5_classes() {
        let g = sym(5);
        assert_eq!(g.classes().len(), 7);
        let five: Vec<_> = g.classes().iter().filter(|c| c.elt_order == 5).collect();
        assert_eq!(five.len(), 1);
        assert_eq!(five[0].size, 24);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = cyclic(10);
        assert_eq!(g.classes().len(), 10);
        assert!(g.is_abelian());
    }

    #[test]
    fn class_equation_and_power_maps() {
        for g in [sym(4), sym(5), alt5(), q8()] {
            let total: u64 = g.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
            for c in g.classes() {
                assert_eq!(g.order() % c.size, 0);
                assert_eq!(c.power_map[0], 0);
                assert_eq!(c.power_map[1 % g.exponent() as usize], c.id);
                assert!(c.members.iter().all(|&m| g.elt_order(m) == c.elt_order));
            }
        }
    }

    #[test]
    fn p_parts() {
        let g = cyclic(6);
        let gen = g.generators()[0];
        let (gp, gq) = g.p_part(gen, 2);
        assert_eq!(gp, g.pow(gen, 3));
        assert_eq!(gq, g.pow(gen, 4));
        assert_eq!(g.mult(gp, gq), gen);
        assert_eq!(g.p_part(0, 3), (0, 0));
        let c5 = cyclic(5);
        let x = c5.generators()[0];
        assert_eq!(c5.p_part(x, 2), (0, x));
    }

    #[test]
    fn q8_is_quaternion() {
        let g = q8();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let involutions = g.elements().filter(|&a| g.elt_order(a) == 2).count();
        assert_eq!(involutions, 1);
    }
}
