//! Row reduction over small prime fields. Entries are kept in `0..p`.

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is a small prime.
    pow_mod(a, p - 2, p)
}

fn pow_mod(base: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u32
}

/// Reduces `rows` in place to reduced row echelon form, drops zero rows and
/// returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            let (pivot_row, other) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (x, &y) in other.iter_mut().zip(pivot_row) {
                *x = (*x + p * p - f * y % p) % p;
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

pub(crate) fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Determinant of a square matrix mod `p`.
pub(crate) fn det_mod(m: &[Vec<u32>], p: u32) -> u32 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1u32;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            a.swap(pr, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = inv_mod(a[c][c], p);
        for i in c + 1..n {
            let f = a[i][c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..n {
                a[i][j] = (a[i][j] + p * p - f * a[c][j] % p) % p;
            }
        }
    }
    det
}
