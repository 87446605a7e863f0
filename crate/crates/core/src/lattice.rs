//! Integer linear algebra: Smith normal form and exact solving of A·x = b over ℤ.

use crate::error::{Error, Result};

/// U·A·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … .
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub rows: usize,
    pub cols: usize,
}

fn ovf() -> Error {
    Error::Overflow("smith normal form")
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// row_dst -= f·row_src
fn row_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, f: i128) -> Result<()> {
    if f == 0 {
        return Ok(());
    }
    for j in 0..m[dst].len() {
        let t = m[src][j].checked_mul(f).ok_or_else(ovf)?;
        m[dst][j] = m[dst][j].checked_sub(t).ok_or_else(ovf)?;
    }
    Ok(())
}

fn col_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, f: i128) -> Result<()> {
    if f == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        let t = row[src].checked_mul(f).ok_or_else(ovf)?;
        row[dst] = row[dst].checked_sub(t).ok_or_else(ovf)?;
    }
    Ok(())
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<Smith> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(finish(m, u, v, rows, cols));
            };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                row_axpy(&mut m, i, t, q)?;
                row_axpy(&mut u, i, t, q)?;
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                col_axpy(&mut m, j, t, q)?;
                col_axpy(&mut v, j, t, q)?;
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold a bad row into row t and go again
            let p = m[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut m, t, i, -1)?;
                    row_axpy(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    Ok(finish(m, u, v, rows, cols))
}

fn finish(m: Vec<Vec<i128>>, u: Vec<Vec<i128>>, v: Vec<Vec<i128>>, rows: usize, cols: usize) -> Smith {
    let diag = (0..rows.min(cols)).map(|i| m[i][i]).collect();
    Smith { diag, u, v, rows, cols }
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<i128> {
        self.diag.iter().copied().filter(|&d| d != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }

    /// Some integer x with A·x = b, or None if there is none.
    pub fn solve(&self, b: &[i64]) -> Result<Option<Vec<i64>>> {
        let ub: Vec<i128> = self
            .u
            .iter()
            .map(|row| {
                row.iter().zip(b).try_fold(0i128, |acc, (&x, &y)| {
                    acc.checked_add(x.checked_mul(y as i128)?)
                })
            })
            .collect::<Option<_>>()
            .ok_or_else(ovf)?;
        let mut y = vec![0i128; self.cols];
        for (i, &c) in ub.iter().enumerate() {
            let d = self.diag.get(i).copied().unwrap_or(0);
            if d == 0 {
                if c != 0 {
                    return Ok(None);
                }
            } else if c % d != 0 {
                return Ok(None);
            } else {
                y[i] = c / d;
            }
        }
        let x = self
            .v
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&y)
                    .try_fold(0i128, |acc, (&a, &b)| acc.checked_add(a.checked_mul(b)?))
                    .and_then(|s| i64::try_from(s).ok())
            })
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(ovf)?;
        Ok(Some(x))
    }
}

pub fn solve_integer(a: &[Vec<i64>], b: &[i64]) -> Result<Option<Vec<i64>>> {
    smith_normal_form(a)?.solve(b)
}
