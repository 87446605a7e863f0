use charcheck::chartab::{character_table, class_structure_constants, CharTable};
use charcheck::corpus::corpus_entry;
use charcheck::cyclotomic::{CycInt, CycNum};
use charcheck::group::{build_group, Group};

fn load(name: &str) -> (Group, CharTable) {
    let g = build_group(corpus_entry(name).unwrap().spec).unwrap();
    let t = character_table(&g).unwrap();
    (g, t)
}

fn sorted_degrees(t: &CharTable) -> Vec<u64> {
    let mut d = t.degrees();
    d.sort_unstable();
    d
}

const GOLDEN_DEGREES: &[(&str, &[u64])] = &[
    ("C6", &[1, 1, 1, 1, 1, 1]),
    ("S3", &[1, 1, 2]),
    ("D8", &[1, 1, 1, 1, 2]),
    ("Q8", &[1, 1, 1, 1, 2]),
    ("A4", &[1, 1, 1, 3]),
    ("S4", &[1, 1, 2, 3, 3]),
    ("A5", &[1, 3, 3, 4, 5]),
    ("S5", &[1, 1, 4, 4, 5, 5, 6]),
    ("SL2_3", &[1, 1, 1, 2, 2, 2, 3]),
];

#[test]
fn golden_degrees_and_orders() {
    for &(name, degrees) in GOLDEN_DEGREES {
        let (g, t) = load(name);
        assert_eq!(sorted_degrees(&t), degrees, "{name}");
        assert_eq!(t.num_classes(), degrees.len(), "{name}");
        let sum: u64 = degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum, g.order(), "{name}");
    }
}

#[test]
fn row_and_column_orthogonality() {
    for &(name, _) in GOLDEN_DEGREES {
        let (_, t) = load(name);
        let r = t.num_classes();
        for i in 0..r {
            for j in 0..r {
                let ip = t.inner_product(&t.characters[i].to_class_function(), &t.characters[j].to_class_function());
                let want = if i == j { CycNum::from(CycInt::one()) } else { CycNum::zero() };
                assert_eq!(ip, want, "{name}: rows {i},{j}");
            }
        }
        for k in 0..r {
            for l in 0..r {
                let mut s = CycInt::zero();
                for ch in &t.characters {
                    s = s.add(&ch.values[k].mul(&ch.values[l].conj()));
                }
                let want = if k == l { t.classes[k].centralizer_order as i64 } else { 0 };
                assert_eq!(s, CycInt::from_int(want), "{name}: columns {k},{l}");
            }
        }
    }
}

#[test]
fn central_characters_are_algebra_homomorphisms() {
    for &(name, _) in GOLDEN_DEGREES {
        let (g, t) = load(name);
        let a = class_structure_constants(&g);
        let r = t.num_classes();
        for chi in 0..t.characters.len() {
            let w: Vec<CycInt> = (0..r).map(|k| t.central_character(chi, k).unwrap()).collect();
            for i in 0..r {
                for j in 0..r {
                    let mut rhs = CycInt::zero();
                    for k in 0..r {
                        rhs = rhs.add(&w[k].scale(a[i][j][k] as i64));
                    }
                    assert_eq!(w[i].mul(&w[j]), rhs, "{name}: χ{chi} K{i}·K{j}");
                }
            }
        }
    }
}

#[test]
fn s3_table_is_the_textbook_one() {
    let (_, t) = load("S3");
    // class order is an implementation detail, so find the columns by element order
    let by_order = |o: u64| t.classes.iter().position(|c| c.elt_order == o).unwrap();
    let (c2, c3) = (by_order(2), by_order(3));
    let mut rows: Vec<(i64, i64, i64)> = t
        .characters
        .iter()
        .map(|ch| {
            let v = |k: usize| ch.values[k].as_int().unwrap();
            (v(0), v(c2), v(c3))
        })
        .collect();
    rows.sort();
    assert_eq!(rows, vec![(1, -1, 1), (1, 1, 1), (2, 0, -1)]);
}

#[test]
fn a5_has_irrational_values_on_five_cycles() {
    let (_, t) = load("A5");
    assert!(!t.is_rational());
    let fives: Vec<usize> = (0..t.num_classes()).filter(|&k| t.classes[k].elt_order == 5).collect();
    assert_eq!(fives.len(), 2);
    let threes: Vec<&charcheck::chartab::Character> = t.characters.iter().filter(|c| c.degree() == 3).collect();
    for ch in threes {
        let (x, y) = (&ch.values[fives[0]], &ch.values[fives[1]]);
        assert!(x.as_int().is_none());
        // the two values are (1 ± √5)/2: they sum to 1 and multiply to −1
        assert_eq!(x.add(y), CycInt::one());
        assert_eq!(x.mul(y), CycInt::from_int(-1));
    }
}

#[test]
fn computation_is_deterministic() {
    let (g, t) = load("SL2_3");
    assert_eq!(character_table(&g).unwrap(), t);
}
