//! The built-in groups, each with a few facts pinned so drift is caught early.

use serde::{Deserialize, Serialize};

use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::group::{Group, GroupSpec};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFacts {
    pub order: Option<u64>,
    pub solvable: Option<bool>,
    pub rational: Option<bool>,
    pub classes: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    #[serde(default)]
    pub expected: ExpectedFacts,
}

impl CorpusEntry {
    fn new(spec: GroupSpec, order: u64, solvable: bool, rational: bool, classes: usize) -> Self {
        let expected =
            ExpectedFacts { order: Some(order), solvable: Some(solvable), rational: Some(rational), classes: Some(classes) };
        CorpusEntry { spec, expected }
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    /// Mismatches between the pinned facts and what was computed.
    pub fn check_pins(&self, g: &Group, t: &CharTable) -> Vec<String> {
        let e = &self.expected;
        let mut out = Vec::new();
        let mut pin = |what: &str, want: Option<String>, got: String| {
            if let Some(w) = want.filter(|w| *w != got) {
                out.push(format!("{}: {what} expected {w}, computed {got}", self.name()));
            }
        };
        pin("order", e.order.map(|x| x.to_string()), g.order().to_string());
        pin("solvable", e.solvable.map(|x| x.to_string()), g.is_solvable().to_string());
        pin("rational", e.rational.map(|x| x.to_string()), t.is_rational().to_string());
        pin("classes", e.classes.map(|x| x.to_string()), t.num_classes().to_string());
        out
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)` with points numbered from 1.
pub fn parse_cycles(degree: usize, s: &str) -> Result<Vec<usize>> {
    let err = |m: &str| Error::CycleSyntax(format!("{m} in `{s}`"));
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut seen = vec![false; degree];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let points: Vec<usize> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err("bad point")))
            .collect::<Result<_>>()?;
        for &x in &points {
            if x == 0 || x > degree {
                return Err(err("point out of range"));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(err("point repeated"));
            }
        }
        for (i, &x) in points.iter().enumerate() {
            perm[x - 1] = points[(i + 1) % points.len()] - 1;
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(perm)
}

fn cycles(degree: usize, cs: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for c in cs {
        for i in 0..c.len() {
            p[c[i]] = c[(i + 1) % c.len()];
        }
    }
    p
}

fn spec(name: &str, degree: usize, gens: Vec<Vec<usize>>) -> GroupSpec {
    GroupSpec::new(name, degree, gens)
}

fn affine_line(p: usize, mult: usize) -> Vec<Vec<usize>> {
    vec![(0..p).map(|x| (x + 1) % p).collect(), (0..p).map(|x| x * mult % p).collect()]
}

/// SL(2,3) acting on the 8 nonzero vectors of F₃².
fn sl23() -> GroupSpec {
    let vs: Vec<(usize, usize)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [usize; 4]| -> Vec<usize> {
        vs.iter()
            .map(|&(a, b)| {
                let w = ((m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3);
                vs.iter().position(|&v| v == w).unwrap()
            })
            .collect()
    };
    spec("SL2_3", 8, vec![act([1, 1, 0, 1]), act([1, 0, 1, 1])])
}

/// PSL(2,7) on the projective line over F₇, with ∞ as point 7.
fn psl27() -> GroupSpec {
    let inf = 7;
    let shift = (0..8).map(|x| if x == inf { inf } else { (x + 1) % 7 }).collect();
    let inv = |x: usize| (1..7).find(|y| x * y % 7 == 1).unwrap();
    let flip = (0..8)
        .map(|x| match x {
            7 => 0,
            0 => inf,
            _ => (7 - inv(x)) % 7,
        })
        .collect();
    spec("PSL2_7", 8, vec![shift, flip])
}

/// Heisenberg group mod 3 on F₃²: (x, y) ↦ (x+1, y) and (x, y) ↦ (x, y+x).
fn heisenberg27() -> GroupSpec {
    let idx = |x: usize, y: usize| 3 * (x % 3) + y % 3;
    let t = (0..9).map(|i| idx(i / 3 + 1, i % 3)).collect();
    let s = (0..9).map(|i| idx(i / 3, i % 3 + i / 3)).collect();
    spec("E27_exp3", 9, vec![t, s])
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=12usize {
        let long: Vec<usize> = (0..n).collect();
        out.push(CorpusEntry::new(spec(&format!("C{n}"), n, vec![cycles(n, &[&long])]), n as u64, true, n == 2, n));
    }
    let e8 = spec("C2xC2xC2", 6, vec![cycles(6, &[&[0, 1]]), cycles(6, &[&[2, 3]]), cycles(6, &[&[4, 5]])]);
    out.push(CorpusEntry::new(e8, 8, true, true, 8));
    let e9 = spec("C3xC3", 6, vec![cycles(6, &[&[0, 1, 2]]), cycles(6, &[&[3, 4, 5]])]);
    out.push(CorpusEntry::new(e9, 9, true, false, 9));
    out.push(CorpusEntry::new(spec("D8", 4, vec![cycles(4, &[&[0, 1, 2, 3]]), cycles(4, &[&[1, 3]])]), 8, true, true, 5));
    let q8 = spec(
        "Q8",
        8,
        vec![cycles(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]), cycles(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]])],
    );
    out.push(CorpusEntry::new(q8, 8, true, true, 5));
    for (n, order, solvable, classes) in [(3usize, 6u64, true, 3usize), (4, 24, true, 5), (5, 120, false, 7)] {
        let long: Vec<usize> = (0..n).collect();
        let s = spec(&format!("S{n}"), n, vec![cycles(n, &[&[0, 1]]), cycles(n, &[&long])]);
        out.push(CorpusEntry::new(s, order, solvable, true, classes));
    }
    out.push(CorpusEntry::new(
        spec("A4", 4, vec![cycles(4, &[&[0, 1, 2]]), cycles(4, &[&[0, 1], &[2, 3]])]),
        12,
        true,
        false,
        4,
    ));
    out.push(CorpusEntry::new(
        spec("A5", 5, vec![cycles(5, &[&[0, 1, 2]]), cycles(5, &[&[0, 1, 2, 3, 4]])]),
        60,
        false,
        false,
        5,
    ));
    out.push(CorpusEntry::new(sl23(), 24, true, false, 7));
    out.push(CorpusEntry::new(psl27(), 168, false, false, 6));
    out.push(CorpusEntry::new(spec("F20", 5, affine_line(5, 2)), 20, true, false, 5));
    out.push(CorpusEntry::new(heisenberg27(), 27, true, false, 11));
    out.push(CorpusEntry::new(spec("E27_exp9", 9, affine_line(9, 4)), 27, true, false, 11));
    let mut dic = spec("Dic12", 7, vec![cycles(7, &[&[0, 1, 2]]), cycles(7, &[&[1, 2], &[3, 4, 5, 6]])]);
    dic.tags.push("C3⋊C4".into());
    out.push(CorpusEntry::new(dic, 12, true, false, 6));
    out
}

pub fn corpus_entry(name: &str) -> Result<CorpusEntry> {
    builtin_corpus().into_iter().find(|e| e.name() == name).ok_or_else(|| Error::UnknownGroup(name.to_string()))
}
