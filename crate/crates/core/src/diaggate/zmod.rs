//! Homogeneous linear systems over `Z/2^m`.

use super::poly::v2;

/// Generators of `{c : A·c ≡ 0 mod 2^m}` for `A` given as rows of length
/// `ncols`.
///
/// `A` is diagonalised by pivoting on an entry of least 2-adic valuation,
/// tracking column operations in `Q`. With `P·A·Q = diag(2^{v_t})`, the
/// solutions are `Q·y` where `2^{v_t}·y_t ≡ 0`.
pub fn kernel_generators(rows: &[Vec<u64>], ncols: usize, m: u32) -> Vec<Vec<u64>> {
    let mask = (1u64 << m) - 1;
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length");
            r.iter().map(|&x| x & mask).collect()
        })
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut q: Vec<Vec<u64>> = (0..ncols).map(|i| (0..ncols).map(|j| u64::from(i == j)).collect()).collect();
    let nrows = a.len();
    let mut valuations = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = v2(x);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        a.swap(t, r);
        for row in a.iter_mut() {
            row.swap(t, c);
        }
        for row in q.iter_mut() {
            row.swap(t, c);
        }
        // scale row t so the pivot is exactly 2^v
        let unit = a[t][t] >> v;
        let inv = inverse_odd(unit) & mask;
        for x in a[t].iter_mut() {
            *x = x.wrapping_mul(inv) & mask;
        }
        // clear column t below and above
        for r2 in 0..nrows {
            if r2 != t && a[r2][t] != 0 {
                let factor = a[r2][t] >> v;
                for j in 0..ncols {
                    let sub = factor.wrapping_mul(a[t][j]);
                    a[r2][j] = a[r2][j].wrapping_sub(sub) & mask;
                }
            }
        }
        // clear row t with column operations
        for j in 0..ncols {
            if j != t && a[t][j] != 0 {
                let factor = a[t][j] >> v;
                for row in a.iter_mut() {
                    let sub = factor.wrapping_mul(row[t]);
                    row[j] = row[j].wrapping_sub(sub) & mask;
                }
                for row in q.iter_mut() {
                    let sub = factor.wrapping_mul(row[t]);
                    row[j] = row[j].wrapping_sub(sub) & mask;
                }
            }
        }
        valuations.push(v);
        t += 1;
    }
    let mut gens = Vec::new();
    for j in 0..ncols {
        let scale = match valuations.get(j) {
            Some(0) => continue,
            Some(&v) => 1u64 << (m - v),
            None => 1,
        };
        let g: Vec<u64> = (0..ncols).map(|i| q[i][j].wrapping_mul(scale) & mask).collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    gens
}

/// Inverse of an odd number modulo 2^64 (Newton iteration).
fn inverse_odd(a: u64) -> u64 {
    debug_assert!(a & 1 == 1);
    let mut x = a;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    x
}
