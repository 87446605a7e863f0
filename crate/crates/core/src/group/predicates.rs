use super::{ClassSummary, Group, Subgroup};
use crate::arith::gcd;

pub fn is_solvable(g: &Group) -> bool {
    let mut h = Subgroup::whole(g);
    loop {
        if h.order() == 1 {
            return true;
        }
        let d = h.derived(g);
        if d.order() == h.order() {
            return false;
        }
        h = d;
    }
}

/// Every class is fixed by all power maps prime to its element order.
pub fn is_rational_classes(classes: &[ClassSummary]) -> bool {
    classes.iter().enumerate().all(|(c, cls)| {
        let o = cls.elt_order;
        (1..o).filter(|&k| gcd(k, o) == 1).all(|k| cls.power_map[k as usize] == c)
    })
}

/// Doubly transitive on the spec's points: transitive, with a transitive point stabilizer.
pub fn is_2transitive(g: &Group) -> bool {
    let n = g.degree();
    if n < 2 {
        return false;
    }
    let mut orbit0 = vec![false; n];
    let mut stab_orbit1 = vec![false; n];
    for x in g.elements() {
        let p = g.perm(x);
        orbit0[p[0] as usize] = true;
        if p[0] == 0 {
            stab_orbit1[p[1] as usize] = true;
        }
    }
    orbit0.iter().all(|&b| b) && stab_orbit1[1..].iter().all(|&b| b)
}

impl Group {
    pub fn is_solvable(&self) -> bool {
        is_solvable(self)
    }

    pub fn is_rational(&self) -> bool {
        is_rational_classes(&self.class_summaries())
    }

    pub fn is_2transitive(&self) -> bool {
        is_2transitive(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::*;

    /// Brute force: a group is non-solvable iff it contains a nontrivial perfect subgroup,
    /// and a minimal such subgroup is 2-generated.
    fn has_perfect_subgroup(g: &Group) -> bool {
        for a in g.elements() {
            for b in g.elements() {
                let h = Subgroup::generated(g, &[a, b]);
                if h.order() > 1 && h.derived(g).order() == h.order() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn solvability() {
        for g in [cyclic(7), sym(3), sym(4), q8(), alt5()] {
            if g.order() <= 60 {
                assert_eq!(is_solvable(&g), !has_perfect_subgroup(&g), "{}", g.name());
            }
        }
        assert!(is_solvable(&sym(4)));
        assert!(!is_solvable(&sym(5)));
        assert!(!is_solvable(&alt5()));
    }

    #[test]
    fn rationality() {
        assert!(sym(5).is_rational());
        assert!(!alt5().is_rational());
        assert!(q8().is_rational());
        assert!(!cyclic(3).is_rational());
        assert!(cyclic(2).is_rational());
    }

    #[test]
    fn double_transitivity() {
        assert!(sym(5).is_2transitive());
        assert!(alt5().is_2transitive());
        assert!(!cyclic(5).is_2transitive());
        assert!(!q8().is_2transitive());
    }
}
