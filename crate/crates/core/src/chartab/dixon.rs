//! Burnside–Dixon: irreducible characters as simultaneous eigenvectors of the class
//! multiplication matrices over GF(q), lifted back to ℤ[ζ_e].

use super::modq::Fq;
use super::{CharTable, Character};
use crate::arith::{least_prime_congruent_one, mod_pow, primitive_root};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::group::Group;

/// `a[i][j][k]` = #{x ∈ K_i : x⁻¹·rep_k ∈ K_j}, so that K_i·K_j = Σ_k a[i][j][k]·K_k.
pub fn class_structure_constants(g: &Group) -> Vec<Vec<Vec<u64>>> {
    let classes = g.classes();
    let r = classes.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (i, ci) in classes.iter().enumerate() {
        for (k, ck) in classes.iter().enumerate() {
            for &x in &ci.members {
                let j = g.class_of(g.mult(g.inverse(x), ck.rep));
                a[i][j][k] += 1;
            }
        }
    }
    a
}

/// The prime used for the modular computation: least q ≡ 1 mod e(G) with q > 2√|G|.
pub fn dixon_prime(g: &Group) -> u64 {
    // q must also exceed the class count: the characteristic polynomials divide by 1..=r
    let bound = (2.0 * (g.order() as f64).sqrt()).max(g.classes().len() as f64);
    least_prime_congruent_one(g.exponent(), bound)
}

pub fn character_table(g: &Group) -> Result<CharTable> {
    let classes = g.classes();
    let r = classes.len();
    let q = dixon_prime(g);
    let f = Fq::new(q);
    let a = class_structure_constants(g);

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()];
    for ai in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split(f, ai, basis)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::LiftFailure("class matrices did not separate all eigenspaces".into()));
    }

    let mut characters = spaces
        .into_iter()
        .map(|mut s| lift_character(g, f, s.pop().unwrap()))
        .collect::<Result<Vec<_>>>()?;
    characters.sort_by(|x, y| {
        let key = |c: &Character| (c.degree(), !c.is_trivial());
        key(x).cmp(&key(y)).then_with(|| x.values.cmp(&y.values))
    });
    Ok(CharTable {
        name: g.name().to_string(),
        order: g.order(),
        exponent: g.exponent(),
        classes: g.class_summaries(),
        characters,
    })
}

/// Splits an invariant subspace (RREF basis) into eigenspaces of the matrix `ai`.
fn split(f: Fq, ai: &[Vec<u64>], basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|v| v.iter().position(|&x| x != 0).unwrap()).collect();
    // b[c][col] = coordinate c of M·v_col, read at the pivot columns
    let mut b = vec![vec![0u64; d]; d];
    for (col, v) in basis.iter().enumerate() {
        for (c, &pc) in pivots.iter().enumerate() {
            let mut s = 0;
            for (k, &vk) in v.iter().enumerate() {
                if vk != 0 && ai[pc][k] != 0 {
                    s = f.add(s, f.mul(f.from_i64(ai[pc][k] as i64), vk));
                }
            }
            b[c][col] = s;
        }
    }
    let poly = f.charpoly(&b);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..f.q {
        if f.eval(&poly, lambda) != 0 {
            continue;
        }
        let mut shifted = b.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = f.sub(row[i], lambda);
        }
        let ys = f.nullspace(&shifted, d);
        let mut vecs: Vec<Vec<u64>> = ys
            .iter()
            .map(|y| {
                let mut v = vec![0u64; basis[0].len()];
                for (coef, bv) in y.iter().zip(&basis) {
                    if *coef != 0 {
                        for (x, &bx) in v.iter_mut().zip(bv) {
                            *x = f.add(*x, f.mul(*coef, bx));
                        }
                    }
                }
                v
            })
            .collect();
        f.rref(&mut vecs);
        total += vecs.len();
        out.push(vecs);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::LiftFailure("class matrix is not diagonalizable mod q".into()));
    }
    Ok(out)
}

fn lift_character(g: &Group, f: Fq, mut w: Vec<u64>) -> Result<Character> {
    let classes = g.classes();
    let order = g.order();
    let e = g.exponent();
    let q = f.q;
    if w[0] == 0 {
        return Err(Error::LiftFailure("eigenvector vanishes at the identity".into()));
    }
    let inv0 = f.inv(w[0]);
    for x in w.iter_mut() {
        *x = f.mul(*x, inv0);
    }
    // Σ_k ω_k ω_{k*}/h_k = |G|/χ(1)²
    let mut s = 0;
    for (k, c) in classes.iter().enumerate() {
        let kstar = c.power_map[(e - 1) as usize];
        s = f.add(s, f.mul(f.mul(w[k], w[kstar]), f.inv(c.size % q)));
    }
    if s == 0 {
        return Err(Error::LiftFailure("degree sum vanished mod q".into()));
    }
    let target = f.mul(order % q, f.inv(s));
    let bound = (order as f64).sqrt().floor() as u64 + 1;
    let deg = (1..=bound)
        .find(|&d| d * d <= order && d * d % q == target)
        .ok_or_else(|| Error::LiftFailure("no degree matches the modular norm".into()))?;
    let chi: Vec<u64> = classes
        .iter()
        .enumerate()
        .map(|(k, c)| f.mul(f.mul(w[k], deg % q), f.inv(c.size % q)))
        .collect();

    let z = mod_pow(primitive_root(q), (q - 1) / e, q);
    let mut values = Vec::with_capacity(classes.len());
    for c in classes {
        let o = c.elt_order;
        let zo = mod_pow(z, e / o, q);
        let zo_inv = f.inv(zo);
        let o_inv = f.inv(o % q);
        let mut mult = vec![0i64; o as usize];
        let mut total = 0u64;
        for (s, m) in mult.iter_mut().enumerate() {
            let step = mod_pow(zo_inv, s as u64, q);
            let mut acc = 0;
            let mut root = 1;
            for t in 0..o as usize {
                acc = f.add(acc, f.mul(chi[c.power_map[t]], root));
                root = f.mul(root, step);
            }
            let ms = f.mul(acc, o_inv);
            if ms > deg {
                return Err(Error::LiftFailure(format!(
                    "multiplicity {ms} exceeds degree {deg} at class {}",
                    c.id
                )));
            }
            *m = ms as i64;
            total += ms;
        }
        if total != deg {
            return Err(Error::LiftFailure(format!("multiplicities sum to {total}, not {deg}")));
        }
        values.push(CycInt::from_root_multiplicities(o, &mult));
    }
    Ok(Character { values })
}
