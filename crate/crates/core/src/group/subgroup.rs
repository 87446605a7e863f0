use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{build_group, BitSet, Group, GroupSpec};
use crate::arith::{lcm, p_part};
use crate::error::{Error, Result};

/// Default bound on |G| for subgroup searches.
pub const DEFAULT_SUBGROUP_CAP: u64 = 500;

/// A subgroup of an enumerated group, stored as a sorted member list plus a bit set.
///
/// The parent group is not borrowed; every method that needs the multiplication takes it
/// as an argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    members: Vec<usize>,
    #[serde(skip)]
    bits: BitSet,
    gens: Vec<usize>,
}

fn close(g: &Group, gens: &[usize]) -> (Vec<usize>, BitSet) {
    let mut bits = BitSet::new(g.order() as usize);
    bits.insert(0);
    let mut members = vec![0];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in gens {
            let y = g.mult(x, s);
            if bits.insert(y) {
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    (members, bits)
}

impl Subgroup {
    pub fn generated(g: &Group, gens: &[usize]) -> Self {
        let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        let (members, bits) = close(g, &gens);
        Subgroup { members, bits, gens }
    }

    pub fn whole(g: &Group) -> Self {
        let members: Vec<usize> = g.elements().collect();
        let bits = BitSet::from_indices(members.len(), members.iter().copied());
        Subgroup { members, bits, gens: g.generators().iter().copied().filter(|&x| x != 0).collect() }
    }

    pub fn trivial(g: &Group) -> Self {
        Self::generated(g, &[])
    }

    /// Wraps a member set already known to be closed, choosing a small generating set.
    pub fn from_members(g: &Group, members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let bits = BitSet::from_indices(g.order() as usize, members.iter().copied());
        let mut gens = Vec::new();
        let mut reached = BitSet::from_indices(g.order() as usize, [0]);
        // Largest element orders first keeps the generating set short.
        let mut by_order = members.clone();
        by_order.sort_by_key(|&m| (std::cmp::Reverse(g.elt_order(m)), m));
        for m in by_order {
            if reached.contains(m) {
                continue;
            }
            gens.push(m);
            reached = close(g, &gens).1;
            if reached.count() == members.len() {
                break;
            }
        }
        debug_assert_eq!(reached, bits, "member set is not closed");
        Subgroup { members, bits, gens }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        self.gens.iter().enumerate().all(|(i, &a)| {
            self.gens[i + 1..].iter().all(|&b| g.mult(a, b) == g.mult(b, a))
        })
    }

    pub fn is_cyclic(&self, g: &Group) -> bool {
        self.members.iter().any(|&x| g.elt_order(x) == self.order())
    }

    pub fn center(&self, g: &Group) -> Subgroup {
        let m = self
            .members
            .iter()
            .copied()
            .filter(|&x| self.gens.iter().all(|&s| g.mult(x, s) == g.mult(s, x)));
        Subgroup::from_members(g, m)
    }

    pub fn exponent(&self, g: &Group) -> u64 {
        self.members.iter().fold(1, |acc, &x| lcm(acc, g.elt_order(x)))
    }

    /// s⁻¹Hs.
    pub fn conjugate(&self, g: &Group, s: usize) -> Subgroup {
        let members: Vec<usize> = self.members.iter().map(|&x| g.conjugate(x, s)).collect();
        let mut sorted = members.clone();
        sorted.sort_unstable();
        Subgroup {
            bits: BitSet::from_indices(g.order() as usize, members),
            members: sorted,
            gens: self.gens.iter().map(|&x| g.conjugate(x, s)).collect(),
        }
    }

    pub fn join(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied().filter(|&x| !self.contains(x)));
        Subgroup::generated(g, &gens)
    }

    /// Elements of this subgroup commuting with `x`.
    pub fn centralizer(&self, g: &Group, x: usize) -> Subgroup {
        let m = self.members.iter().copied().filter(|&h| g.mult(h, x) == g.mult(x, h));
        Subgroup::from_members(g, m)
    }

    /// Elements of this subgroup normalizing ⟨x⟩.
    pub fn normalizer_of_cyclic(&self, g: &Group, x: usize) -> Subgroup {
        let cyc = BitSet::from_indices(g.order() as usize, g.cyclic_members(x));
        let m = self.members.iter().copied().filter(|&h| cyc.contains(g.conjugate(x, h)));
        Subgroup::from_members(g, m)
    }

    pub fn normalizes(&self, g: &Group, s: usize) -> bool {
        self.gens.iter().all(|&x| self.contains(g.conjugate(x, s)))
    }

    /// Elements of this subgroup normalizing `k`.
    pub fn normalizer(&self, g: &Group, k: &Subgroup) -> Subgroup {
        let m = self.members.iter().copied().filter(|&h| k.normalizes(g, h));
        Subgroup::from_members(g, m)
    }

    pub fn is_normal_in(&self, g: &Group, ambient: &Subgroup) -> bool {
        ambient.gens.iter().all(|&s| self.normalizes(g, s))
    }

    /// A Sylow p-subgroup, by greedy ascent through normalizers.
    pub fn sylow(&self, g: &Group, p: u64) -> Subgroup {
        let target = p_part(self.order(), p);
        if target == 1 {
            return Subgroup::trivial(g);
        }
        let start = self
            .members
            .iter()
            .copied()
            .filter(|&x| g.is_p_element(x, p))
            .max_by_key(|&x| (g.elt_order(x), std::cmp::Reverse(x)))
            .unwrap();
        let mut sub = Subgroup::generated(g, &[start]);
        while sub.order() < target {
            let y = self
                .members
                .iter()
                .copied()
                .find(|&y| !sub.contains(y) && g.is_p_element(y, p) && sub.normalizes(g, y))
                .expect("a proper p-subgroup grows inside its normalizer");
            let mut gens = sub.gens.clone();
            gens.push(y);
            sub = Subgroup::generated(g, &gens);
        }
        sub
    }

    /// Normal closure of `seeds` inside this subgroup.
    pub fn normal_closure(&self, g: &Group, seeds: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = seeds.iter().copied().filter(|&x| x != 0).collect();
        let mut cur = Subgroup::generated(g, &gens);
        loop {
            let extra: Vec<usize> = cur
                .gens
                .iter()
                .flat_map(|&x| self.gens.iter().map(move |&s| (x, s)))
                .map(|(x, s)| g.conjugate(x, s))
                .filter(|&y| !cur.contains(y))
                .collect();
            match extra.first() {
                None => return cur,
                Some(&y) => {
                    gens.push(y);
                    cur = Subgroup::generated(g, &gens);
                }
            }
        }
    }

    pub fn derived(&self, g: &Group) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                let c = g.mult(g.mult(g.inverse(a), g.inverse(b)), g.mult(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(g, &comms)
    }

    /// Rebuilds the subgroup as a standalone permutation group.
    ///
    /// Returns the group and the map from its element indices to indices in `g`.
    pub fn to_group(&self, g: &Group, name: &str) -> Result<(Group, Vec<usize>)> {
        let gens = self
            .gens
            .iter()
            .map(|&x| g.perm(x).iter().map(|&i| i as usize).collect())
            .collect();
        let sub = build_group(GroupSpec::new(name, g.degree(), gens))?;
        let map = sub.elements().map(|e| g.index_of(sub.perm(e)).unwrap()).collect();
        Ok((sub, map))
    }
}

impl Group {
    pub fn centralizer(&self, x: usize) -> Subgroup {
        Subgroup::whole(self).centralizer(self, x)
    }

    pub fn normalizer_of_cyclic(&self, x: usize) -> Subgroup {
        Subgroup::whole(self).normalizer_of_cyclic(self, x)
    }

    pub fn sylow(&self, p: u64) -> Subgroup {
        Subgroup::whole(self).sylow(self, p)
    }
}

/// One subgroup from each conjugacy class of subgroups H with `index_divisor | |G:H|`.
///
/// Each representative is the conjugate whose bit set is least, and the list is sorted by
/// order, then by that bit set.
pub fn subgroups_up_to_conjugacy(g: &Group, index_divisor: u64, cap: u64) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::SearchCapExceeded { order: g.order(), cap });
    }
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in g.elements().skip(1) {
        let c = Subgroup::generated(g, &[x]);
        if seen_cyclic.insert(c.bits.clone()) {
            cyclic.push(c);
        }
    }

    let mut known: HashSet<BitSet> = HashSet::new();
    let mut reps: BTreeMap<(u64, BitSet), Subgroup> = BTreeMap::new();
    let mut queue = Vec::new();
    let mut admit = |h: Subgroup, queue: &mut Vec<Subgroup>| {
        if known.contains(&h.bits) {
            return;
        }
        let mut least = h.clone();
        for s in g.elements() {
            let c = h.conjugate(g, s);
            if c.bits < least.bits {
                least = c.clone();
            }
            known.insert(c.bits);
        }
        reps.insert((least.order(), least.bits.clone()), least.clone());
        queue.push(least);
    };
    admit(Subgroup::trivial(g), &mut queue);
    while let Some(h) = queue.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            admit(h.join(g, c), &mut queue);
        }
    }
    Ok(reps
        .into_values()
        .filter(|h| (g.order() / h.order()) % index_divisor.max(1) == 0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::*;

    #[test]
    fn centralizers_and_normalizers() {
        let g = sym(5);
        let five = g.classes().iter().find(|c| c.elt_order == 5).unwrap().rep;
        assert_eq!(g.centralizer(five).order(), 5);
        assert_eq!(g.normalizer_of_cyclic(five).order(), 20);
        let s4 = sym(4);
        let four = s4.classes().iter().find(|c| c.elt_order == 4).unwrap().rep;
        assert_eq!(s4.centralizer(four).order(), 4);
        assert_eq!(s4.normalizer_of_cyclic(four).order(), 8);
        assert_eq!(s4.centralizer(0).order(), 24);
    }

    #[test]
    fn sylow_subgroups() {
        let s4 = sym(4);
        let p = s4.sylow(2);
        assert_eq!(p.order(), 8);
        assert!(!p.is_abelian(&s4));
        assert_eq!(p.center(&s4).order(), 2);
        assert_eq!(alt5().sylow(5).order(), 5);
        assert_eq!(cyclic(9).sylow(2).order(), 1);
        let s5 = sym(5);
        let p = s5.sylow(2);
        for x in s5.elements() {
            assert_eq!(p.conjugate(&s5, x).order(), 8);
        }
    }

    #[test]
    fn derived_series() {
        let s4 = sym(4);
        let d = Subgroup::whole(&s4).derived(&s4);
        assert_eq!(d.order(), 12);
        assert_eq!(d.derived(&s4).order(), 4);
        let a5 = alt5();
        assert_eq!(Subgroup::whole(&a5).derived(&a5).order(), 60);
    }

    #[test]
    fn subgroup_classes() {
        let s4 = sym(4);
        let all = subgroups_up_to_conjugacy(&s4, 1, 500).unwrap();
        assert_eq!(all.len(), 11);
        assert_eq!(all[0].order(), 1);
        assert_eq!(all.last().unwrap().order(), 24);
        let idx3 = subgroups_up_to_conjugacy(&s4, 3, 500).unwrap();
        assert!(idx3.iter().any(|h| h.order() == 8));
        let q = q8();
        let idx2 = subgroups_up_to_conjugacy(&q, 2, 500).unwrap();
        let orders: Vec<u64> = idx2.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4]);
        assert_eq!(subgroups_up_to_conjugacy(&sym(5), 1, 500).unwrap().len(), 19);
        assert!(subgroups_up_to_conjugacy(&sym(6), 1, 500).is_err());
    }

    #[test]
    fn to_group_round_trip() {
        let s4 = sym(4);
        let p = s4.sylow(2);
        let (d8, map) = p.to_group(&s4, "D8").unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.classes().len(), 5);
        let mut mapped = map.clone();
        mapped.sort_unstable();
        assert_eq!(mapped, p.members());
    }
}
