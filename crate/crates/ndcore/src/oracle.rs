//! Brute-force ground truth straight from Young diagrams.
//!
//! Nothing here touches the poset recursion or the generating-function
//! pipeline: partitions are built row by row, hook lengths are computed from
//! the diagram, and cores are recognized by inspecting hooks. The label/hook
//! correspondence (`ideal_to_partition`) maps consecutive-free order ideals
//! to partitions with distinct parts for round-trip testing.

use num_integer::Integer;
use thiserror::Error;

use crate::poset::{OrderIdeal, SemigroupPoset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Panics if parts are not weakly decreasing or contain zero.
    pub fn new(parts: Vec<u64>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            write!(f, "()")
        } else {
            write!(
                f,
                "({})",
                self.parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

/// Hook length of every box: arm (boxes to the right) + leg (boxes below)
/// + 1, aligned with the Young diagram rows.
pub fn hook_lengths(p: &Partition) -> Vec<Vec<u64>> {
    let rows = p.parts.len();
    p.parts
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            (0..len)
                .map(|j| {
                    let arm = len - 1 - j;
                    let leg = p.parts[i + 1..rows]
                        .iter()
                        .take_while(|&&lower| lower > j)
                        .count() as u64;
                    arm + leg + 1
                })
                .collect()
        })
        .collect()
}

/// True iff no box has hook length `s` or `t`.
pub fn is_st_core(p: &Partition, s: u64, t: u64) -> bool {
    hook_lengths(p).iter().flatten().all(|&h| h != s && h != t)
}

/// All `(s, t)`-core partitions with distinct parts, sorted by size and then
/// lexicographically by parts.
///
/// Search: build diagrams bottom row up, so each new (longer) row leaves the
/// hooks of the rows below it unchanged. A new row whose own hooks hit `s`
/// or `t` kills the whole branch. The first-column hook of the top row is
/// bounded by `s*t - s - t`, which bounds the search space. Every extension
/// attempt counts against the budget.
pub fn enumerate_core_distinct(
    s: u64,
    t: u64,
    budget: Option<u64>,
) -> Result<Vec<Partition>, OracleError> {
    assert!(s >= 1 && t >= 1 && s.gcd(&t) == 1, "s and t must be coprime");
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let frobenius = (s * t) as i64 - (s + t) as i64;

    // rows_asc holds part lengths bottom-up (strictly increasing).
    fn search(
        rows_asc: &mut Vec<u64>,
        s: u64,
        t: u64,
        frobenius: i64,
        nodes: &mut u64,
        budget: u64,
        out: &mut Vec<Partition>,
    ) -> Result<(), OracleError> {
        let mut desc: Vec<u64> = rows_asc.clone();
        desc.reverse();
        out.push(Partition { parts: desc });

        let r = rows_asc.len() as u64;
        let min_len = rows_asc.last().map_or(1, |&l| l + 1);
        let mut new_len = min_len;
        // First-column hook of the new top row is new_len + r.
        while (new_len + r) as i64 <= frobenius {
            *nodes += 1;
            if *nodes > budget {
                return Err(OracleError::BudgetExceeded { budget });
            }
            // Hooks of the prospective top row; rows below never change
            // afterwards, so they were already checked when placed.
            let row_ok = (0..new_len).all(|j| {
                let arm = new_len - 1 - j;
                let leg = rows_asc.iter().filter(|&&l| l > j).count() as u64;
                let hook = arm + leg + 1;
                hook != s && hook != t
            });
            if row_ok {
                rows_asc.push(new_len);
                search(rows_asc, s, t, frobenius, nodes, budget, out)?;
                rows_asc.pop();
            }
            new_len += 1;
        }
        Ok(())
    }

    let mut out = Vec::new();
    let mut nodes = 0;
    search(&mut Vec::new(), s, t, frobenius, &mut nodes, budget, &mut out)?;
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(out)
}

/// Maps an order ideal to the partition whose first-column hook lengths are
/// the ideal's labels: with labels `h_1 > ... > h_r`, part `i` is
/// `h_i - (r - i)`.
pub fn ideal_to_partition(poset: &SemigroupPoset, ideal: &OrderIdeal) -> Partition {
    debug_assert!(ideal.labels().iter().all(|&l| poset.contains(l)));
    let mut desc: Vec<u64> = ideal.labels().to_vec();
    desc.reverse();
    let r = desc.len() as u64;
    let parts: Vec<u64> = desc
        .iter()
        .enumerate()
        .map(|(idx, &h)| h - (r - 1 - idx as u64))
        .collect();
    Partition { parts }
}
