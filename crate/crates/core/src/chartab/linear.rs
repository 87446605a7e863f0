use std::collections::HashMap;

use crate::arith::lcm;
use crate::cyclotomic::CycInt;
use crate::group::{Group, Subgroup};

/// Canonical coset representative of x modulo the normal subgroup `d`.
fn coset_key(g: &Group, d: &Subgroup, x: usize) -> usize {
    d.members().iter().map(|&y| g.mult(x, y)).min().unwrap()
}

/// Least k ≥ 1 with x^k ∈ `n`.
fn order_mod(g: &Group, n: &Subgroup, x: usize) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !n.contains(y) {
        y = g.mult(y, x);
        k += 1;
    }
    k
}

/// All linear characters of `h`, each given by its values on `h.members()` in order.
///
/// Works through the abelianization H/H′, decomposed greedily into cyclic factors.
pub fn linear_characters(g: &Group, h: &Subgroup) -> Vec<Vec<CycInt>> {
    let derived = h.derived(g);
    let quotient_order = h.order() / derived.order();

    // basis a_1..a_r of H/H′ with orders m_1..m_r, and the preimage of their span
    let mut basis: Vec<(usize, u64)> = Vec::new();
    let mut span = derived.clone();
    while span.order() < h.order() {
        let (b, m) = h
            .members()
            .iter()
            .map(|&x| (x, order_mod(g, &span, x)))
            .max_by_key(|&(x, m)| (m, std::cmp::Reverse(x)))
            .unwrap();
        let lift = span
            .members()
            .iter()
            .map(|&s| g.mult(b, s))
            .find(|&y| order_mod(g, &derived, y) == m)
            .expect("a maximal-order coset has a lift of the same order");
        basis.push((lift, m));
        let mut gens = span.gens().to_vec();
        gens.push(lift);
        span = Subgroup::generated(g, &gens);
    }
    debug_assert_eq!(basis.iter().map(|b| b.1).product::<u64>(), quotient_order);

    // exponent vector of every coset
    let mut coords: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut tuple = vec![0u64; basis.len()];
    loop {
        let mut x = 0;
        for (&(a, _), &k) in basis.iter().zip(&tuple) {
            x = g.mult(x, g.pow(a, k));
        }
        coords.insert(coset_key(g, &derived, x), tuple.clone());
        let mut i = 0;
        while i < tuple.len() {
            tuple[i] += 1;
            if tuple[i] < basis[i].1 {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == tuple.len() {
            break;
        }
    }
    let member_coords: Vec<&Vec<u64>> =
        h.members().iter().map(|&x| &coords[&coset_key(g, &derived, x)]).collect();

    let big = basis.iter().fold(1, |acc, b| lcm(acc, b.1));
    let mut out = Vec::with_capacity(quotient_order as usize);
    let mut t = vec![0u64; basis.len()];
    loop {
        let values = member_coords
            .iter()
            .map(|k| {
                let exp: u64 = basis
                    .iter()
                    .zip(&t)
                    .zip(k.iter())
                    .map(|((b, &ti), &ki)| ti * ki * (big / b.1))
                    .sum();
                CycInt::root(big, exp % big)
            })
            .collect();
        out.push(values);
        let mut i = 0;
        while i < t.len() {
            t[i] += 1;
            if t[i] < basis[i].1 {
                break;
            }
            t[i] = 0;
            i += 1;
        }
        if i == t.len() {
            break;
        }
    }
    out
}
