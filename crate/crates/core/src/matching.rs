//! Minimum-weight perfect matching on complete or sparse bipartite graphs
//! (the assignment problem), by successive shortest augmenting paths with
//! vertex potentials. O(n³) for an n×n cost matrix.

/// Cost of an edge that may not be used.
pub const FORBIDDEN: i64 = i64::MAX / 4;

/// Returns the minimum total cost and, for each row, its assigned column;
/// `None` if no perfect matching avoids [`FORBIDDEN`] edges.
///
/// Rows are inserted in order and columns scanned in order, so among
/// optimal matchings the result is a deterministic function of the input.
pub fn min_cost_assignment(cost: &[Vec<i64>]) -> Option<(i64, Vec<usize>)> {
    let n = cost.len();
    if n == 0 {
        return Some((0, Vec::new()));
    }
    assert!(cost.iter().all(|row| row.len() == n), "cost matrix must be square");
    // big enough that any use of a forbidden edge outweighs every real cost
    let finite_max = cost
        .iter()
        .flatten()
        .filter(|&&c| c < FORBIDDEN)
        .fold(0i64, |m, &c| m.max(c.abs()));
    let blocked = finite_max.saturating_mul(n as i64 + 1).saturating_add(1);
    let weight = |i: usize, j: usize| {
        let c = cost[i][j];
        if c >= FORBIDDEN {
            blocked
        } else {
            c
        }
    };

    // 1-based: index 0 of the column arrays is a virtual column
    let inf = i64::MAX / 2;
    let mut row_pot = vec![0i64; n + 1];
    let mut col_pot = vec![0i64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col = 0;
        let mut min_slack = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col] = true;
            let r = owner[col];
            let mut delta = inf;
            let mut next = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let slack = weight(r - 1, j - 1) - row_pot[r] - col_pot[j];
                if slack < min_slack[j] {
                    min_slack[j] = slack;
                    way[j] = col;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    next = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    row_pot[owner[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col = next;
            if owner[col] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col];
            owner[col] = owner[prev];
            col = prev;
            if col == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[owner[j] - 1] = j - 1;
    }
    let mut total = 0i64;
    for (i, &j) in assignment.iter().enumerate() {
        if cost[i][j] >= FORBIDDEN {
            return None;
        }
        total += cost[i][j];
    }
    Some((total, assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(cost: &[Vec<i64>]) -> Option<i64> {
        fn go(cost: &[Vec<i64>], row: usize, used: &mut Vec<bool>, acc: i64, best: &mut Option<i64>) {
            if row == cost.len() {
                *best = Some(best.map_or(acc, |b| b.min(acc)));
                return;
            }
            for j in 0..cost.len() {
                if !used[j] && cost[row][j] < FORBIDDEN {
                    used[j] = true;
                    go(cost, row + 1, used, acc + cost[row][j], best);
                    used[j] = false;
                }
            }
        }
        let mut best = None;
        go(cost, 0, &mut vec![false; cost.len()], 0, &mut best);
        best
    }

    #[test]
    fn small_cases() {
        assert_eq!(min_cost_assignment(&[]), Some((0, vec![])));
        assert_eq!(min_cost_assignment(&[vec![7]]), Some((7, vec![0])));
        let cost = vec![vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2]];
        let (total, a) = min_cost_assignment(&cost).unwrap();
        assert_eq!(total, 5);
        assert_eq!(a, vec![1, 0, 2]);
        let blocked = vec![vec![FORBIDDEN, FORBIDDEN], vec![0, 0]];
        assert_eq!(min_cost_assignment(&blocked), None);
        let forced = vec![vec![FORBIDDEN, 9], vec![0, 0]];
        assert_eq!(min_cost_assignment(&forced), Some((9, vec![1, 0])));
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(
            n in 1usize..6,
            raw in proptest::collection::vec(0i64..12, 36),
        ) {
            let cost: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| {
                    let c = raw[i * 6 + j];
                    if c >= 10 { FORBIDDEN } else { c }
                }).collect())
                .collect();
            let got = min_cost_assignment(&cost);
            prop_assert_eq!(got.as_ref().map(|g| g.0), brute(&cost));
            if let Some((total, a)) = got {
                let mut cols = a.clone();
                cols.sort_unstable();
                prop_assert_eq!(cols, (0..n).collect::<Vec<_>>());
                prop_assert_eq!(total, a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum::<i64>());
            }
        }
    }
}
