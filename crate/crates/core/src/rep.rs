//! Representations of the `A₂` quiver `1 → 2` and brute-force Hom/Ext
//! dimensions, used to certify the `a2_path` Hom table.

use alloc::vec;
use alloc::vec::Vec;

/// A representation `V1 --f--> V2`; `f` is stored row-major as a
/// `d2 × d1` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub d1: usize,
    pub d2: usize,
    pub f: Vec<i64>,
}

impl Rep {
    pub fn new(d1: usize, d2: usize, f: Vec<i64>) -> Self {
        assert_eq!(f.len(), d1 * d2, "map has wrong shape");
        Rep { d1, d2, f }
    }

    /// `C → 0`
    pub fn s1() -> Self {
        Rep::new(1, 0, vec![])
    }

    /// `0 → C`
    pub fn s2() -> Self {
        Rep::new(0, 1, vec![])
    }

    /// `C --1--> C`
    pub fn e() -> Self {
        Rep::new(1, 1, vec![1])
    }

    fn fmap(&self, row: usize, col: usize) -> i64 {
        self.f[row * self.d1 + col]
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][col] == 0 {
                continue;
            }
            let (a, b) = (rows[r][col], rows[i][col]);
            for j in 0..ncols {
                rows[i][j] = rows[i][j] * a - rows[r][j] * b;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `dim Hom(m, n)`: pairs `(a1, a2)` with `a2 ∘ f_m = f_n ∘ a1`.
pub fn hom_dim(m: &Rep, n: &Rep) -> u32 {
    // Unknowns: a1 (n.d1 × m.d1) then a2 (n.d2 × m.d2), row-major.
    let n_a1 = n.d1 * m.d1;
    let unknowns = n_a1 + n.d2 * m.d2;
    if unknowns == 0 {
        return 0;
    }
    let a1 = |i: usize, j: usize| i * m.d1 + j;
    let a2 = |i: usize, j: usize| n_a1 + i * m.d2 + j;
    let mut eqs = Vec::new();
    // Entry (i, j) of a2·f_m − f_n·a1, an n.d2 × m.d1 matrix.
    for i in 0..n.d2 {
        for j in 0..m.d1 {
            let mut row = vec![0i128; unknowns];
            for k in 0..m.d2 {
                row[a2(i, k)] += m.fmap(k, j) as i128;
            }
            for k in 0..n.d1 {
                row[a1(k, j)] -= n.fmap(i, k) as i128;
            }
            eqs.push(row);
        }
    }
    (unknowns - rank(eqs)) as u32
}

/// Euler form `⟨x, y⟩ = x1·y1 + x2·y2 − x1·y2` of the quiver `1 → 2`.
pub fn euler_form(m: &Rep, n: &Rep) -> i64 {
    let (x1, x2, y1, y2) = (m.d1 as i64, m.d2 as i64, n.d1 as i64, n.d2 as i64);
    x1 * y1 + x2 * y2 - x1 * y2
}

/// `dim Ext¹(m, n) = dim Hom(m, n) − ⟨m, n⟩` (the path algebra is hereditary).
pub fn ext_dim(m: &Rep, n: &Rep) -> u32 {
    let d = hom_dim(m, n) as i64 - euler_form(m, n);
    debug_assert!(d >= 0);
    d as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homs_between_simples_and_the_extension() {
        let (s1, s2, e) = (Rep::s1(), Rep::s2(), Rep::e());
        assert_eq!(hom_dim(&s1, &s2), 0);
        assert_eq!(hom_dim(&s2, &s1), 0);
        assert_eq!(hom_dim(&s2, &e), 1);
        assert_eq!(hom_dim(&e, &s1), 1);
        assert_eq!(hom_dim(&s1, &e), 0);
        assert_eq!(hom_dim(&e, &s2), 0);
        for x in [&s1, &s2, &e] {
            assert_eq!(hom_dim(x, x), 1);
            assert_eq!(ext_dim(x, x), 0);
        }
        assert_eq!(ext_dim(&s1, &s2), 1);
        assert_eq!(ext_dim(&s2, &s1), 0);
    }

    #[test]
    fn hom_of_direct_sum_is_additive() {
        // E ⊕ S2 as one representation: V1 = C, V2 = C², f = (1, 0)ᵀ.
        let sum = Rep::new(1, 2, vec![1, 0]);
        assert_eq!(hom_dim(&Rep::s2(), &sum), 2);
        assert_eq!(hom_dim(&sum, &Rep::s1()), 1);
        assert_eq!(hom_dim(&sum, &sum), 3);
    }
}
