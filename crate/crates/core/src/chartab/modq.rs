//! Dense linear algebra over a prime field GF(q) with q < 2³².

use crate::arith::mod_pow;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fq {
    pub q: u64,
}

impl Fq {
    pub fn new(q: u64) -> Self {
        assert!(q < 1 << 32, "prime {q} too large for single-word arithmetic");
        Fq { q }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero");
        mod_pow(a, self.q - 2, self.q)
    }

    pub fn from_i64(self, t: i64) -> u64 {
        t.rem_euclid(self.q as i64) as u64
    }

    /// Row-reduces in place, drops zero rows, returns the pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    let (src, dst) = if i < r {
                        let (a, b) = rows.split_at_mut(r);
                        (&b[0], &mut a[i])
                    } else {
                        let (a, b) = rows.split_at_mut(i);
                        (&a[r], &mut b[0])
                    };
                    for (d, &s) in dst.iter_mut().zip(src.iter()) {
                        *d = self.sub(*d, self.mul(f, s));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of {y : A y = 0} for an m×n matrix A.
    pub fn nullspace(self, a: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let mut rows = a.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut y = vec![0; n];
                y[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    y[pc] = self.sub(0, row[f]);
                }
                y
            })
            .collect()
    }

    /// Characteristic polynomial det(λI − B), low to high, by Faddeev–LeVerrier.
    pub fn charpoly(self, b: &[Vec<u64>]) -> Vec<u64> {
        let n = b.len();
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        let mut m = vec![vec![0u64; n]; n];
        for k in 1..=n {
            // M_k = B·M_{k-1} + c_{n-k+1}·I
            let mut next = vec![vec![0u64; n]; n];
            for i in 0..n {
                for l in 0..n {
                    if b[i][l] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] = self.add(next[i][j], self.mul(b[i][l], m[l][j]));
                    }
                }
                next[i][i] = self.add(next[i][i], coeffs[n - k + 1]);
            }
            m = next;
            // c_{n-k} = −tr(B·M_k)/k
            let mut tr = 0;
            for i in 0..n {
                for l in 0..n {
                    tr = self.add(tr, self.mul(b[i][l], m[l][i]));
                }
            }
            coeffs[n - k] = self.mul(self.sub(0, tr), self.inv(k as u64 % self.q));
        }
        coeffs
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}
