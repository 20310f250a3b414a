//! Littlewood–Richardson coefficients by brute-force tableau enumeration.
//!
//! Shares no code with the divided-difference engine.

use std::collections::BTreeMap;

/// A partition as a weakly decreasing list of positive parts.
pub type Partition = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LrError {
    #[error("{shape:?} does not fit in the {rows}x{cols} rectangle")]
    DoesNotFit { shape: Partition, rows: usize, cols: usize },
    #[error("{0:?} is not a partition")]
    NotPartition(Vec<usize>),
    #[error("Gr({k},{n}) needs 0 < k < n")]
    BadGrassmannian { k: usize, n: usize },
}

fn normalize(p: &[usize]) -> Result<Partition, LrError> {
    if p.windows(2).any(|w| w[0] < w[1]) {
        return Err(LrError::NotPartition(p.to_vec()));
    }
    Ok(p.iter().copied().filter(|&x| x > 0).collect())
}

fn part(p: &[usize], i: usize) -> usize {
    p.get(i).copied().unwrap_or(0)
}

/// Number of LR tableaux of shape `ν/λ` and content `μ`.
pub fn lr_coefficient(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let rows = nu.len();
    if lambda.len() > rows || (0..rows).any(|i| part(lambda, i) > nu[i]) {
        return 0;
    }
    let cells: usize = nu.iter().sum::<usize>() - lambda.iter().sum::<usize>();
    if cells != mu.iter().sum::<usize>() {
        return 0;
    }
    let mut order = Vec::with_capacity(cells);
    for (r, &end) in nu.iter().enumerate().take(rows) {
        for c in (part(lambda, r)..end).rev() {
            order.push((r, c));
        }
    }
    let width = part(nu, 0);
    let mut grid = vec![vec![0usize; width]; rows];
    let mut counts = vec![0usize; mu.len() + 1];
    let mut total = 0;
    fill(0, &order, lambda, nu, mu, &mut grid, &mut counts, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn fill(
    idx: usize,
    order: &[(usize, usize)],
    lambda: &[usize],
    nu: &[usize],
    mu: &[usize],
    grid: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    if idx == order.len() {
        *total += 1;
        return;
    }
    let (r, c) = order[idx];
    let max_right = if c + 1 < nu[r] { grid[r][c + 1] } else { usize::MAX };
    let min_above = if r > 0 && c >= part(lambda, r - 1) { grid[r - 1][c] + 1 } else { 1 };
    for v in min_above..=mu.len().min(max_right) {
        if counts[v] >= mu[v - 1] || (v > 1 && counts[v] + 1 > counts[v - 1]) {
            continue;
        }
        grid[r][c] = v;
        counts[v] += 1;
        fill(idx + 1, order, lambda, nu, mu, grid, counts, total);
        counts[v] -= 1;
    }
    grid[r][c] = 0;
}

/// Partitions fitting in a `rows x cols` box.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    boxed(rows, cols, &mut cur, &mut out);
    out
}

fn boxed(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    out.push(cur.clone());
    if cur.len() == rows {
        return;
    }
    for v in 1..=max {
        cur.push(v);
        boxed(rows, v, cur, out);
        cur.pop();
    }
}

/// `s_λ · s_μ` truncated to the `rows x cols` box.
pub fn product_in_box(lambda: &[usize], mu: &[usize], rows: usize, cols: usize) -> BTreeMap<Partition, u64> {
    let size: usize = lambda.iter().sum::<usize>() + mu.iter().sum::<usize>();
    partitions_in_box(rows, cols)
        .into_iter()
        .filter(|nu| nu.iter().sum::<usize>() == size)
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

/// Coefficient of the top class in `σ_{λ_1} ⋯ σ_{λ_m}` on `Gr(k, n)`.
pub fn lr_oracle(shapes: &[Partition], k: usize, n: usize) -> Result<u64, LrError> {
    if k == 0 || k >= n {
        return Err(LrError::BadGrassmannian { k, n });
    }
    let (rows, cols) = (k, n - k);
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::from([(Vec::new(), 1)]);
    for s in shapes {
        let s = normalize(s)?;
        if s.len() > rows || part(&s, 0) > cols {
            return Err(LrError::DoesNotFit { shape: s, rows, cols });
        }
        let mut next = BTreeMap::new();
        for (p, c) in &acc {
            for (q, d) in product_in_box(p, &s, rows, cols) {
                *next.entry(q).or_insert(0) += c * d;
            }
        }
        acc = next;
    }
    Ok(acc.get(&vec![cols; rows]).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr24_examples() {
        assert_eq!(lr_coefficient(&[1], &[1], &[1, 1]), 1);
        assert_eq!(lr_coefficient(&[1], &[1], &[2]), 1);
        assert_eq!(lr_oracle(&[vec![1], vec![1], vec![2]], 2, 4).unwrap(), 1);
        assert_eq!(lr_oracle(&[vec![1], vec![1], vec![1, 1]], 2, 4).unwrap(), 1);
        assert_eq!(lr_oracle(&[vec![2, 2], vec![]], 2, 4).unwrap(), 1);
        assert_eq!(lr_oracle(&vec![vec![1]; 4], 2, 4).unwrap(), 2);
    }

    #[test]
    fn classical_coefficient() {
        assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
    }

    #[test]
    fn fit_checked() {
        assert!(matches!(lr_oracle(&[vec![3]], 2, 4), Err(LrError::DoesNotFit { .. })));
        assert!(lr_oracle(&[vec![1, 2]], 2, 4).is_err());
    }
}
