//! The gap poset of a numerical semigroup generated by two coprime integers.
//!
//! For coprime `s, t` the poset elements are the gaps: natural numbers not
//! representable as `a*s + b*t` with nonnegative `a, b`. The order relation
//! is `c <= e` iff `e - c` is representable. The poset is finite with
//! `(s-1)(t-1)/2` elements and largest element `s*t - s - t`.
//!
//! When `t ≡ -1 (mod s)` the poset is a colonnade of `s - 1` vertical
//! pillars; order ideals with no two consecutive labels are then prefixes
//! hung from the pillar tops, with adjacent pillars never both occupied.
//! That structure drives the fast ideal enumerator; arbitrary coprime pairs
//! fall back to a direct search over labels.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("{s} and {t} are not coprime (gcd {g})")]
    NotCoprime { s: u64, t: u64, g: u64 },
    #[error("label {0} is not an element of the poset")]
    UnknownLabel(u64),
    #[error("poset for ({s}, {t}) is too large to sieve")]
    TooLarge { s: u64, t: u64 },
}

/// One column of the pillar view: `height` labels `top, top + s, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pillar {
    pub top: u64,
    pub height: u64,
}

/// Pillar decomposition available when `t = d*s - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PillarView {
    pub d: u64,
    pub pillars: Vec<Pillar>,
}

#[derive(Clone, Debug)]
pub struct SemigroupPoset {
    s: u64,
    t: u64,
    labels: Vec<u64>,
    /// representable[m] == true iff m = a*s + b*t for some a, b >= 0;
    /// indexed up to the largest gap.
    representable: Vec<bool>,
    pillars: Option<PillarView>,
}

const SIEVE_LIMIT: u64 = 50_000_000;

/// The `s - 1` pillars of the poset for `(n, d*n - 1)`:
/// pillar `k` is topped by label `k` and has `d*(n-k) - 1` elements.
pub fn pillar_decomposition(n: u64, d: u64) -> Vec<Pillar> {
    assert!(n >= 2 && d >= 1);
    (1..n)
        .map(|k| Pillar {
            top: k,
            height: d * (n - k) - 1,
        })
        .collect()
}

impl SemigroupPoset {
    /// Builds the gap poset of the semigroup generated by coprime `s`, `t`.
    pub fn new(s: u64, t: u64) -> Result<Self, PosetError> {
        if s == 0 || t == 0 {
            return Err(PosetError::NotCoprime { s, t, g: 0 });
        }
        let g = s.gcd(&t);
        if g != 1 {
            return Err(PosetError::NotCoprime { s, t, g });
        }
        if s.saturating_mul(t) > SIEVE_LIMIT {
            return Err(PosetError::TooLarge { s, t });
        }

        // Largest gap is s*t - s - t; everything above is representable.
        let frobenius = (s * t).checked_sub(s + t);
        let mut representable = Vec::new();
        let mut labels = Vec::new();
        if let Some(frob) = frobenius {
            representable = vec![false; frob as usize + 1];
            representable[0] = true;
            for m in 1..=frob {
                let i = m as usize;
                representable[i] = (m >= s && representable[i - s as usize])
                    || (m >= t && representable[i - t as usize]);
            }
            labels = (1..=frob).filter(|&m| !representable[m as usize]).collect();
        }

        let pillars = (s >= 2 && (t + 1) % s == 0).then(|| {
            let d = (t + 1) / s;
            PillarView {
                d,
                pillars: pillar_decomposition(s, d),
            }
        });

        Ok(SemigroupPoset {
            s,
            t,
            labels,
            representable,
            pillars,
        })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Gap labels in increasing order.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn max_label(&self) -> Option<u64> {
        self.labels.last().copied()
    }

    pub fn pillar_view(&self) -> Option<&PillarView> {
        self.pillars.as_ref()
    }

    pub fn contains(&self, label: u64) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// `c <= e` in the poset order: their difference is representable.
    pub fn leq(&self, c: u64, e: u64) -> Result<bool, PosetError> {
        for x in [c, e] {
            if !self.contains(x) {
                return Err(PosetError::UnknownLabel(x));
            }
        }
        if e < c {
            return Ok(false);
        }
        Ok(self.representable[(e - c) as usize])
    }

    /// Streams every order ideal with no two consecutive labels, each
    /// exactly once. Pillar-shaped posets are walked in lexicographic order
    /// of pillar prefix lengths; other coprime pairs use a direct search.
    pub fn ideals_no_consecutive(&self) -> IdealIter<'_> {
        match &self.pillars {
            Some(view) => IdealIter::Pillars(PillarIdealIter::new(self, view)),
            None => IdealIter::Generic(self.enumerate_generic().into_iter()),
        }
    }

    /// Direct backtracking over labels in increasing order, keeping only
    /// downward-closed, consecutive-free selections.
    fn enumerate_generic(&self) -> Vec<OrderIdeal> {
        let m = self.labels.len();
        // For each label, the indices of strictly smaller labels below it.
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..i {
                if self.representable[(self.labels[i] - self.labels[j]) as usize] {
                    below[i].push(j);
                }
            }
        }

        fn dfs(
            i: usize,
            labels: &[u64],
            below: &[Vec<usize>],
            chosen: &mut Vec<bool>,
            out: &mut Vec<OrderIdeal>,
        ) {
            if i == labels.len() {
                out.push(OrderIdeal::new(
                    labels
                        .iter()
                        .zip(chosen.iter())
                        .filter_map(|(&l, &c)| c.then_some(l))
                        .collect(),
                ));
                return;
            }
            chosen[i] = false;
            dfs(i + 1, labels, below, chosen, out);
            let closed = below[i].iter().all(|&j| chosen[j]);
            let consecutive = labels[..i]
                .iter()
                .zip(chosen.iter())
                .any(|(&l, &c)| c && l + 1 == labels[i]);
            if closed && !consecutive {
                chosen[i] = true;
                dfs(i + 1, labels, below, chosen, out);
                chosen[i] = false;
            }
        }

        let mut out = Vec::new();
        let mut chosen = vec![false; m];
        dfs(0, &self.labels, &below, &mut chosen, &mut out);
        out
    }

    /// ASCII layout: steps of `s` go downward, steps of `t` go leftward, so
    /// the largest label sits in the lower-left corner.
    pub fn render(&self) -> String {
        let Some(frob) = self.max_label() else {
            return String::new();
        };
        // Every gap m satisfies frob - m = a*s + b*t with a unique 0 <= b < s.
        let t_inv = mod_inverse(self.t % self.s, self.s);
        let coords: Vec<(u64, u64, u64)> = self
            .labels
            .iter()
            .map(|&m| {
                let r = frob - m;
                let b = (r % self.s) * t_inv % self.s;
                let a = (r - b * self.t) / self.s;
                (m, a, b)
            })
            .collect();
        let a_max = coords.iter().map(|&(_, a, _)| a).max().unwrap();
        let b_max = coords.iter().map(|&(_, _, b)| b).max().unwrap();
        let width = frob.to_string().len();
        let mut grid = vec![vec![None; b_max as usize + 1]; a_max as usize + 1];
        for &(m, a, b) in &coords {
            grid[(a_max - a) as usize][b as usize] = Some(m);
        }
        let mut lines = Vec::with_capacity(grid.len());
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Some(m) => format!("{m:>width$}"),
                    None => " ".repeat(width),
                })
                .collect();
            lines.push(cells.join(" ").trim_end().to_string());
        }
        lines.join("\n")
    }
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = i64::extended_gcd(&(a as i64), &(m as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i64) as u64
}

/// A downward-closed, consecutive-free subset of poset labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderIdeal {
    labels: Vec<u64>,
}

impl OrderIdeal {
    pub fn new(mut labels: Vec<u64>) -> Self {
        labels.sort_unstable();
        OrderIdeal { labels }
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Sum of the member labels.
    pub fn weight(&self) -> u64 {
        self.labels.iter().sum()
    }

    /// Number of member labels.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: u64) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// Re-verifies the defining properties against a poset; used as an
    /// independent check on the enumerators.
    pub fn verify(&self, poset: &SemigroupPoset) -> Result<bool, PosetError> {
        for &x in &self.labels {
            if !poset.contains(x) {
                return Err(PosetError::UnknownLabel(x));
            }
            for &y in poset.labels() {
                if y >= x {
                    break;
                }
                if poset.leq(y, x)? && !self.contains(y) {
                    return Ok(false);
                }
            }
        }
        let consecutive = self.labels.windows(2).any(|w| w[1] == w[0] + 1);
        Ok(!consecutive)
    }
}

pub enum IdealIter<'a> {
    Pillars(PillarIdealIter<'a>),
    Generic(std::vec::IntoIter<OrderIdeal>),
}

impl Iterator for IdealIter<'_> {
    type Item = OrderIdeal;
    fn next(&mut self) -> Option<OrderIdeal> {
        match self {
            IdealIter::Pillars(it) => it.next(),
            IdealIter::Generic(it) => it.next(),
        }
    }
}

/// Odometer over pillar prefix lengths: position `k` runs up to its cap,
/// incrementing requires the pillar to the left to be empty, and advancing
/// a position clears everything to its right.
pub struct PillarIdealIter<'a> {
    poset: &'a SemigroupPoset,
    caps: Vec<u64>,
    lengths: Vec<u64>,
    started: bool,
    done: bool,
}

impl<'a> PillarIdealIter<'a> {
    fn new(poset: &'a SemigroupPoset, view: &PillarView) -> Self {
        let m = view.pillars.len();
        // Interior pillars allow at most d beads before the neighbor's top
        // would be forced in; the last pillar is capped by its own height.
        let caps: Vec<u64> = view
            .pillars
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i + 1 < m {
                    view.d.min(p.height)
                } else {
                    p.height
                }
            })
            .collect();
        PillarIdealIter {
            poset,
            lengths: vec![0; caps.len()],
            caps,
            started: false,
            done: false,
        }
    }

    fn materialize(&self) -> OrderIdeal {
        let s = self.poset.s;
        let mut labels = Vec::new();
        for (i, &len) in self.lengths.iter().enumerate() {
            let top = (i + 1) as u64;
            for j in 0..len {
                labels.push(top + j * s);
            }
        }
        OrderIdeal::new(labels)
    }

    fn advance(&mut self) -> bool {
        for j in (0..self.lengths.len()).rev() {
            let left_occupied = j > 0 && self.lengths[j - 1] > 0;
            if self.lengths[j] < self.caps[j] && !left_occupied {
                self.lengths[j] += 1;
                for l in &mut self.lengths[j + 1..] {
                    *l = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PillarIdealIter<'_> {
    type Item = OrderIdeal;
    fn next(&mut self) -> Option<OrderIdeal> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.materialize());
        }
        if self.advance() {
            Some(self.materialize())
        } else {
            self.done = true;
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc;
    use num_bigint::BigInt;

    fn poset(s: u64, t: u64) -> SemigroupPoset {
        SemigroupPoset::new(s, t).unwrap()
    }

    #[test]
    fn rejects_non_coprime() {
        assert_eq!(
            SemigroupPoset::new(4, 6).unwrap_err(),
            PosetError::NotCoprime { s: 4, t: 6, g: 2 }
        );
    }

    #[test]
    fn small_gap_sets() {
        assert_eq!(poset(2, 3).labels(), &[1]);
        assert_eq!(poset(3, 5).labels(), &[1, 2, 4, 7]);
        assert!(poset(1, 7).labels().is_empty());
        assert!(poset(2, 1).labels().is_empty());
    }

    #[test]
    fn figure_sized_pillars() {
        let p = poset(4, 19);
        let view = p.pillar_view().unwrap();
        assert_eq!(view.d, 5);
        let heights: Vec<u64> = view.pillars.iter().map(|p| p.height).collect();
        assert_eq!(heights, vec![14, 9, 4]);
        let tops: Vec<u64> = view.pillars.iter().map(|p| p.top).collect();
        assert_eq!(tops, vec![1, 2, 3]);
        assert_eq!(p.labels().len(), 3 * 18 / 2);
        assert_eq!(p.max_label(), Some(53));
    }

    #[test]
    fn cardinality_and_max_for_coprime_pairs() {
        for s in 2..=30u64 {
            for t in 2..=30u64 {
                if s.gcd(&t) != 1 {
                    continue;
                }
                let p = poset(s, t);
                assert_eq!(p.labels().len() as u64, (s - 1) * (t - 1) / 2, "({s},{t})");
                assert_eq!(p.max_label(), Some(s * t - s - t));
            }
        }
    }

    #[test]
    fn order_relation_examples() {
        let p = poset(3, 5);
        assert!(p.leq(1, 4).unwrap()); // 3 = 1*3
        assert!(!p.leq(2, 4).unwrap()); // 2 is not representable
        assert!(p.leq(2, 7).unwrap()); // 5 = 1*5
        for &x in p.labels() {
            assert!(p.leq(x, x).unwrap());
        }
        assert_eq!(p.leq(3, 4).unwrap_err(), PosetError::UnknownLabel(3));
    }

    #[test]
    fn pillar_decomposition_examples() {
        let pil = pillar_decomposition(4, 5);
        assert_eq!(
            pil,
            vec![
                Pillar { top: 1, height: 14 },
                Pillar { top: 2, height: 9 },
                Pillar { top: 3, height: 4 }
            ]
        );
        assert_eq!(pillar_decomposition(2, 7), vec![Pillar { top: 1, height: 6 }]);
        let pil32 = pillar_decomposition(3, 2);
        assert_eq!(
            pil32,
            vec![Pillar { top: 1, height: 3 }, Pillar { top: 2, height: 1 }]
        );
    }

    #[test]
    fn pillar_union_matches_sieve() {
        for n in 2..=8u64 {
            for d in 1..=5u64 {
                let p = poset(n, d * n - 1);
                let mut union: Vec<u64> = pillar_decomposition(n, d)
                    .iter()
                    .flat_map(|pil| (0..pil.height).map(move |j| pil.top + j * n))
                    .collect();
                union.sort_unstable();
                assert_eq!(union, p.labels(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn enumerates_tiny_posets_exactly() {
        let two: Vec<OrderIdeal> = poset(2, 3).ideals_no_consecutive().collect();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0], OrderIdeal::new(vec![]));
        assert_eq!(two[1], OrderIdeal::new(vec![1]));

        let found: Vec<OrderIdeal> = poset(3, 5).ideals_no_consecutive().collect();
        let expected = [vec![], vec![2], vec![1], vec![1, 4]];
        assert_eq!(found.len(), 4);
        for ideal in expected {
            assert!(found.contains(&OrderIdeal::new(ideal)));
        }
    }

    #[test]
    fn counts_match_recurrence() {
        for n in 2..=8u64 {
            for d in 1..=5u64 {
                let p = poset(n, d * n - 1);
                let count = p.ideals_no_consecutive().count();
                assert_eq!(BigInt::from(count), genfunc::count(n, d), "n={n} d={d}");
            }
        }
        // d = 1 column is the Fibonacci sequence.
        let fib: Vec<usize> = (2..=10)
            .map(|n| poset(n, n - 1).ideals_no_consecutive().count())
            .collect();
        assert_eq!(fib, vec![1, 2, 3, 5, 8, 13, 21, 34, 55]);
    }

    #[test]
    fn figure_sized_count() {
        assert_eq!(poset(4, 19).ideals_no_consecutive().count(), 35);
    }

    #[test]
    fn every_yielded_ideal_verifies() {
        // Pillar-shaped and general coprime posets, re-checked by definition.
        for (s, t) in [(4, 11), (5, 9), (3, 7), (4, 5), (5, 7), (2, 9)] {
            let p = poset(s, t);
            let ideals: Vec<OrderIdeal> = p.ideals_no_consecutive().collect();
            for ideal in &ideals {
                assert!(ideal.verify(&p).unwrap(), "({s},{t}) {ideal:?}");
            }
            // Exactly once each.
            let mut sorted = ideals.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), ideals.len());
        }
    }

    #[test]
    fn generic_and_pillar_paths_agree() {
        for (n, d) in [(3u64, 2u64), (4, 2), (5, 3), (2, 4)] {
            let p = poset(n, d * n - 1);
            let mut fast: Vec<OrderIdeal> = p.ideals_no_consecutive().collect();
            let mut slow = p.enumerate_generic();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "n={n} d={d}");
        }
    }

    #[test]
    fn lexicographic_prefix_order() {
        let p = poset(3, 5);
        let seq: Vec<Vec<u64>> = p
            .ideals_no_consecutive()
            .map(|i| i.labels().to_vec())
            .collect();
        assert_eq!(seq, vec![vec![], vec![2], vec![1], vec![1, 4]]);
    }

    #[test]
    fn render_single_cell() {
        assert_eq!(poset(2, 3).render(), "1");
    }

    #[test]
    fn render_two_columns() {
        assert_eq!(poset(3, 5).render(), "1\n4\n7 2");
    }

    #[test]
    fn render_trapezoid_shape() {
        let text = poset(4, 19).render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 14);
        // Tallest pillar on the left, topped by 1; largest label lower-left.
        assert_eq!(lines[0].trim(), "1");
        assert!(lines[13].starts_with("53"));
        // Column heights 14 / 9 / 4 with tops 1, 2, 3.
        assert!(lines[5].split_whitespace().any(|c| c == "2"));
        assert!(lines[10].split_whitespace().any(|c| c == "3"));
        assert_eq!(lines[13].split_whitespace().count(), 3);
    }

    #[test]
    fn render_empty_poset() {
        assert_eq!(poset(1, 5).render(), "");
    }
}
