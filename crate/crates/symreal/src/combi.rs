//! Compositions, partitions, orbit types and sizes, composition orders and
//! joins, and minimal adjacent-transposition sorting.
//!
//! A *composition* of `n` is an ordered tuple of positive integers summing to
//! `n`; it encodes a face of the closed Weyl chamber `x1 <= ... <= xn` by
//! prescribing which consecutive coordinates are equal (each part is the
//! length of one run of equal coordinates).  A *partition* is an unordered
//! composition, stored here with ascending parts; it encodes the *type* of a
//! point, i.e. the multiset of multiplicities of its coordinate values.
//!
//! Compositions of the same sum are partially ordered by coarsening: a
//! composition precedes every composition obtained from it by merging
//! adjacent parts (replacing commas by plus signs).  Under this order any two
//! compositions have a least upper bound, their [`join`], whose chamber face
//! is the intersection of the two input faces.
//!
//! The module also provides the orbit size of a point of a given type (a
//! multinomial count) and a bubble-sort routine that returns a minimal
//! sequence of adjacent transpositions sorting a vector, never swapping equal
//! entries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// Errors produced by the combinatorial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombiError {
    /// Two compositions or partitions that must sum to the same total do not.
    #[error("operands must sum to the same total (left sums to {left}, right to {right})")]
    SumMismatch { left: usize, right: usize },
    /// An input vector required to be sorted ascending is not; `position` is
    /// the 1-based index of the first entry exceeding its successor.
    #[error(
        "input vector is not sorted ascending (entry at position {position} exceeds its successor)"
    )]
    NotSorted { position: usize },
}

/// An ordered tuple of positive integers; a composition of its sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    /// Builds a composition from its parts.
    ///
    /// # Panics
    /// Panics if any part is zero.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "composition parts must be positive"
        );
        Composition { parts }
    }

    /// The parts, in order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether there are no parts (only the empty composition of 0).
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Forgets the order of the parts, yielding the underlying partition.
    pub fn to_partition(&self) -> Partition {
        Partition::new(self.parts.clone())
    }

    /// The set of prefix sums (including the total, excluding 0).  Two
    /// compositions of the same total compare by reverse inclusion of these
    /// sets: coarser compositions have smaller sets.
    fn prefix_sums(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A partition: a multiset of positive integers, stored with ascending parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from its parts; the parts are sorted ascending.
    ///
    /// # Panics
    /// Panics if any part is zero.
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "partition parts must be positive"
        );
        parts.sort_unstable();
        Partition { parts }
    }

    /// The parts, ascending.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The number of parts (the length of the partition).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether there are no parts (only the empty partition of 0).
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The multiplicity form: pairs `(part value, multiplicity)` with
    /// distinct part values ascending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((value, count)) if *value == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (value, count)) in self.multiplicities().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{value}^{count}")?;
        }
        write!(f, ")")
    }
}

/// A sequence of adjacent transpositions, recorded as 1-based position pairs
/// `(j, j+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TranspositionSeq {
    swaps: Vec<(usize, usize)>,
}

impl TranspositionSeq {
    /// The recorded swaps, in application order.
    pub fn swaps(&self) -> &[(usize, usize)] {
        &self.swaps
    }

    /// The number of swaps.
    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    /// Whether the sequence is empty.
    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Replays the swaps on a fresh copy of `v` and returns the result.
    ///
    /// # Panics
    /// Panics if a recorded position is out of range for `v`.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for &(j, _) in &self.swaps {
            out.swap(j - 1, j);
        }
        out
    }
}

/// The four possible outcomes when comparing two compositions of the same
/// total under the coarsening order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionOrder {
    /// The left composition is strictly finer: the right one arises from it
    /// by merging adjacent parts.
    Precedes,
    /// The left composition is strictly coarser.
    Follows,
    /// The two compositions are equal.
    Equal,
    /// Neither composition refines the other.
    Incomparable,
}

/// Enumerates all compositions of `n`, lexicographically ordered.
///
/// With `length` given, only compositions with exactly that many parts are
/// returned.  With `alternate_odd` set, the list is further filtered to
/// compositions whose parts at odd (1-based) positions all equal 1.
///
/// The unfiltered list has `2^(n-1)` entries.
pub fn enumerate_compositions(
    n: usize,
    length: Option<usize>,
    alternate_odd: bool,
) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    gen_compositions(n, length, &mut prefix, &mut out);
    if alternate_odd {
        out.retain(|c| c.parts().iter().step_by(2).all(|&p| p == 1));
    }
    out
}

fn gen_compositions(
    remaining: usize,
    parts_left: Option<usize>,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Composition>,
) {
    if remaining == 0 {
        if parts_left.is_none_or(|k| k == 0) && !prefix.is_empty() {
            out.push(Composition::new(prefix.clone()));
        }
        return;
    }
    if parts_left == Some(0) {
        return;
    }
    for part in 1..=remaining {
        // With a fixed number of parts still to place, each must be >= 1.
        if let Some(k) = parts_left {
            if remaining - part < k - 1 {
                break;
            }
        }
        prefix.push(part);
        gen_compositions(remaining - part, parts_left.map(|k| k - 1), prefix, out);
        prefix.pop();
    }
}

/// Enumerates all partitions of `n` with ascending parts, lexicographically
/// ordered by their part tuples.
///
/// With `min_length` given, only partitions with at least that many parts are
/// returned.
pub fn enumerate_partitions(n: usize, min_length: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    gen_partitions(n, 1, &mut prefix, &mut out);
    if let Some(l) = min_length {
        out.retain(|p| p.len() >= l);
    }
    out
}

fn gen_partitions(
    remaining: usize,
    min_part: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if !prefix.is_empty() {
            out.push(Partition::new(prefix.clone()));
        }
        return;
    }
    for part in min_part..=remaining {
        prefix.push(part);
        gen_partitions(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

/// Compares two compositions of the same total under the coarsening order.
///
/// `a` precedes `b` exactly when `b` arises from `a` by merging adjacent
/// parts, equivalently when the prefix-sum set of `b` is contained in that of
/// `a`.
pub fn composition_order(a: &Composition, b: &Composition) -> Result<CompositionOrder, CombiError> {
    if a.n() != b.n() {
        return Err(CombiError::SumMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let sa = a.prefix_sums();
    let sb = b.prefix_sums();
    Ok(if sa == sb {
        CompositionOrder::Equal
    } else if sb.is_subset(&sa) {
        CompositionOrder::Precedes
    } else if sa.is_subset(&sb) {
        CompositionOrder::Follows
    } else {
        CompositionOrder::Incomparable
    })
}

/// The least upper bound of two compositions of the same total under the
/// coarsening order.
///
/// Its chamber face is the intersection of the faces of `a` and `b`: a
/// coordinate boundary survives in the join exactly when it is a boundary in
/// both inputs, so the join's prefix-sum set is the intersection of the two
/// prefix-sum sets.
pub fn join(a: &Composition, b: &Composition) -> Result<Composition, CombiError> {
    if a.n() != b.n() {
        return Err(CombiError::SumMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let sa = a.prefix_sums();
    let sb = b.prefix_sums();
    let mut parts = Vec::new();
    let mut prev = 0;
    for &s in sa.intersection(&sb) {
        parts.push(s - prev);
        prev = s;
    }
    Ok(Composition::new(parts))
}

/// Whether partition `a` refines partition `b`, i.e. whether the parts of
/// `a` can be grouped so that each group sums to one part of `b`.
pub fn refines(a: &Partition, b: &Partition) -> Result<bool, CombiError> {
    if a.n() != b.n() {
        return Err(CombiError::SumMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let mut items: Vec<usize> = a.parts().to_vec();
    items.sort_unstable_by(|x, y| y.cmp(x));
    let mut caps: Vec<usize> = b.parts().to_vec();
    Ok(pack_exact(&items, &mut caps))
}

/// Whether `items` (descending) can be distributed into bins with the given
/// capacities so that every bin is filled exactly.  Assumes the totals match.
fn pack_exact(items: &[usize], caps: &mut Vec<usize>) -> bool {
    let Some((&item, rest)) = items.split_first() else {
        return caps.iter().all(|&c| c == 0);
    };
    let mut tried = BTreeSet::new();
    for k in 0..caps.len() {
        let c = caps[k];
        // Bins with equal remaining capacity are interchangeable.
        if c >= item && tried.insert(c) {
            caps[k] = c - item;
            if pack_exact(rest, caps) {
                caps[k] = c;
                return true;
            }
            caps[k] = c;
        }
    }
    false
}

/// The type of a point: the partition formed by the multiplicities of its
/// distinct coordinate values.
pub fn type_of_point<T: Ord>(u: &[T]) -> Partition {
    let mut counts: BTreeMap<&T, usize> = BTreeMap::new();
    for value in u {
        *counts.entry(value).or_insert(0) += 1;
    }
    Partition::new(counts.into_values().collect())
}

/// The finest composition whose chamber face contains the ascending vector
/// `u`: the run lengths of its maximal blocks of equal consecutive entries.
///
/// Returns [`CombiError::NotSorted`] if `u` is not ascending.
pub fn largest_composition<T: Ord>(u: &[T]) -> Result<Composition, CombiError> {
    for (i, pair) in u.windows(2).enumerate() {
        if pair[0] > pair[1] {
            return Err(CombiError::NotSorted { position: i + 1 });
        }
    }
    let mut parts = Vec::new();
    let mut run = 0;
    for (i, value) in u.iter().enumerate() {
        if i > 0 && *value != u[i - 1] {
            parts.push(run);
            run = 0;
        }
        run += 1;
    }
    if run > 0 {
        parts.push(run);
    }
    Ok(Composition::new(parts))
}

/// The number of points in the orbit of any point of type `lambda`: the
/// multinomial `n! / (n_1!^{l_1} ... n_r!^{l_r})` where `n_i` ranges over the
/// distinct part values and `l_i` over their multiplicities.
pub fn orbit_size(lambda: &Partition) -> BigUint {
    let mut size = factorial(lambda.n());
    for (value, count) in lambda.multiplicities() {
        for _ in 0..count {
            size /= factorial(value);
        }
    }
    size
}

fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::one();
    for k in 2..=n {
        out *= BigUint::from(k);
    }
    out
}

/// Sorts `a` ascending by bubble sort, recording a minimal sequence of
/// adjacent transpositions.  Entries are swapped only when strictly out of
/// order, so equal entries are never exchanged and the number of swaps equals
/// the inversion count of `a`.  Runs in O(n^2) comparisons.
pub fn minimal_adjacent_transpositions<T: Ord + Clone>(a: &[T]) -> (TranspositionSeq, Vec<T>) {
    let mut v = a.to_vec();
    let mut swaps = Vec::new();
    let len = v.len();
    for pass in 0..len.saturating_sub(1) {
        for j in 0..len - 1 - pass {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                swaps.push((j + 1, j + 2));
            }
        }
    }
    (TranspositionSeq { swaps }, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn compositions_of_four() {
        let all = enumerate_compositions(4, None, false);
        let expect: Vec<Composition> = [
            vec![1, 1, 1, 1],
            vec![1, 1, 2],
            vec![1, 2, 1],
            vec![1, 3],
            vec![2, 1, 1],
            vec![2, 2],
            vec![3, 1],
            vec![4],
        ]
        .into_iter()
        .map(Composition::new)
        .collect();
        assert_eq!(all, expect);
    }

    #[test]
    fn composition_counts_are_powers_of_two() {
        for n in 1..=12 {
            let all = enumerate_compositions(n, None, false);
            assert_eq!(all.len(), 1 << (n - 1), "n = {n}");
            let dedup: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(dedup.len(), all.len(), "duplicates for n = {n}");
        }
    }

    #[test]
    fn compositions_of_four_into_three() {
        let all = enumerate_compositions(4, Some(3), false);
        assert_eq!(
            all,
            vec![comp(&[1, 1, 2]), comp(&[1, 2, 1]), comp(&[2, 1, 1])]
        );
    }

    #[test]
    fn alternate_odd_compositions_of_four_into_three() {
        let all = enumerate_compositions(4, Some(3), true);
        assert_eq!(all, vec![comp(&[1, 2, 1])]);
    }

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(
            enumerate_partitions(3, None),
            vec![part(&[1, 1, 1]), part(&[1, 2]), part(&[3])]
        );
        assert_eq!(enumerate_partitions(4, None).len(), 5);
        // Known partition numbers p(1)..p(10).
        let expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &count) in (1..=10).zip(expected.iter()) {
            assert_eq!(enumerate_partitions(n, None).len(), count, "n = {n}");
        }
    }

    #[test]
    fn partitions_with_min_length() {
        let all = enumerate_partitions(7, Some(3));
        assert!(all.contains(&part(&[2, 2, 3])));
        assert!(all.iter().all(|p| p.len() >= 3));
        let unfiltered = enumerate_partitions(7, None);
        let long: Vec<Partition> = unfiltered.into_iter().filter(|p| p.len() >= 3).collect();
        assert_eq!(all, long);
    }

    #[test]
    fn multiplicity_form() {
        assert_eq!(
            part(&[3, 2, 2]).multiplicities(),
            vec![(2, 2), (3, 1)] // ascending distinct values
        );
        assert_eq!(part(&[3, 2, 2]).to_string(), "(2^2 3^1)");
        assert_eq!(comp(&[2, 1, 1]).to_string(), "(2,1,1)");
    }

    #[test]
    fn order_examples() {
        let fine = comp(&[1, 2, 1]);
        for coarse in [comp(&[3, 1]), comp(&[1, 3]), comp(&[4])] {
            assert_eq!(
                composition_order(&fine, &coarse).unwrap(),
                CompositionOrder::Precedes
            );
            assert_eq!(
                composition_order(&coarse, &fine).unwrap(),
                CompositionOrder::Follows
            );
        }
        assert_eq!(
            composition_order(&fine, &fine).unwrap(),
            CompositionOrder::Equal
        );
        assert_eq!(
            composition_order(&comp(&[2, 1, 1]), &comp(&[1, 1, 2])).unwrap(),
            CompositionOrder::Incomparable
        );
        assert!(matches!(
            composition_order(&comp(&[2, 1]), &comp(&[4])),
            Err(CombiError::SumMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn join_examples() {
        assert_eq!(
            join(&comp(&[2, 1, 1]), &comp(&[1, 1, 1, 1])).unwrap(),
            comp(&[2, 1, 1])
        );
        assert_eq!(
            join(&comp(&[1, 2, 1]), &comp(&[2, 1, 1])).unwrap(),
            comp(&[3, 1])
        );
        let c = comp(&[1, 3]);
        assert_eq!(join(&c, &c).unwrap(), c);
    }

    #[test]
    fn refinement_examples() {
        assert!(refines(&part(&[1, 1, 1]), &part(&[1, 2])).unwrap());
        assert!(!refines(&part(&[3]), &part(&[1, 1, 1])).unwrap());
        assert!(refines(&part(&[1, 1, 2, 2]), &part(&[3, 3])).unwrap());
        assert!(refines(&part(&[1, 1, 1, 3]), &part(&[3, 3])).unwrap());
        assert!(!refines(&part(&[2, 2]), &part(&[1, 3])).unwrap());
        let p = part(&[2, 3, 3]);
        assert!(refines(&p, &p).unwrap());
        assert!(matches!(
            refines(&part(&[2]), &part(&[1, 2])),
            Err(CombiError::SumMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn point_types_and_largest_composition() {
        assert_eq!(type_of_point(&[5, 5, 2]), part(&[1, 2]));
        assert_eq!(type_of_point(&[1, 2, 3]), part(&[1, 1, 1]));
        assert_eq!(type_of_point(&[7, 7, 7, 7]), part(&[4]));
        assert_eq!(largest_composition(&[2, 5, 5]).unwrap(), comp(&[1, 2]));
        assert_eq!(largest_composition(&[1, 2, 3]).unwrap(), comp(&[1, 1, 1]));
        assert_eq!(
            largest_composition(&[5, 2]),
            Err(CombiError::NotSorted { position: 1 })
        );
        assert_eq!(
            largest_composition(&[1, 3, 2]),
            Err(CombiError::NotSorted { position: 2 })
        );
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&part(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(orbit_size(&part(&[3])), BigUint::from(1u32));
        // 7!/(2! 2! 3!) = 210 for the partition (2^2 3^1) of 7.
        assert_eq!(orbit_size(&part(&[2, 2, 3])), BigUint::from(210u32));
    }

    #[test]
    fn transposition_examples() {
        let (seq, sorted) = minimal_adjacent_transpositions(&[1, 2, 3]);
        assert!(seq.is_empty());
        assert_eq!(sorted, vec![1, 2, 3]);

        let (seq, sorted) = minimal_adjacent_transpositions(&[2, 1]);
        assert_eq!(seq.swaps(), &[(1, 2)]);
        assert_eq!(sorted, vec![1, 2]);

        let (seq, sorted) = minimal_adjacent_transpositions(&[3, 1, 2]);
        assert_eq!(seq.len(), 2);
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(seq.apply(&[3, 1, 2]), sorted);
    }

    fn inversion_count<T: Ord>(v: &[T]) -> usize {
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Expands a partition and per-group values into a point of the block
    /// layout: for each part (ascending), one run of that many equal values.
    fn expand_point(lambda: &Partition, values: &[u32]) -> Vec<u32> {
        assert_eq!(lambda.len(), values.len());
        let mut out = Vec::new();
        for (part, &value) in lambda.parts().iter().zip(values) {
            out.extend(std::iter::repeat_n(value, *part));
        }
        out
    }

    /// Exhaustive stratification check: over a 3-element value set, the
    /// points carrying the equality pattern of `lambda` split exactly into
    /// the strict strata of the partitions it refines.
    #[test]
    fn stratification_over_three_values() {
        let values: [u32; 3] = [10, 20, 30];
        for n in 1..=4 {
            for lambda in enumerate_partitions(n, None) {
                let groups = lambda.len();
                // Count, for each coarser type, how many value assignments
                // to the groups of `lambda` produce a point of that type.
                let mut seen: BTreeMap<Partition, usize> = BTreeMap::new();
                let total = values.len().pow(groups as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut assignment = Vec::with_capacity(groups);
                    for _ in 0..groups {
                        assignment.push(values[c % values.len()]);
                        c /= values.len();
                    }
                    let point = expand_point(&lambda, &assignment);
                    let ty = type_of_point(&point);
                    assert!(
                        refines(&lambda, &ty).unwrap(),
                        "type {ty} of a lambda = {lambda} point must be coarser"
                    );
                    *seen.entry(ty).or_insert(0) += 1;
                }
                // Every coarser partition reachable with three values occurs.
                for coarser in enumerate_partitions(n, None) {
                    let reachable =
                        refines(&lambda, &coarser).unwrap() && coarser.len() <= values.len();
                    assert_eq!(
                        seen.contains_key(&coarser),
                        reachable,
                        "lambda = {lambda}, coarser = {coarser}"
                    );
                }
                assert_eq!(seen.values().sum::<usize>(), total);
            }
        }
    }

    /// Whole-space counting form of the stratification: the number of points
    /// of each type, over a fixed finite value set, is the orbit size times
    /// the number of strict value assignments.
    #[test]
    fn type_counts_match_orbit_sizes() {
        let values: [u32; 3] = [1, 2, 3];
        for n in 1..=4 {
            let mut counts: BTreeMap<Partition, usize> = BTreeMap::new();
            let total = values.len().pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let mut point = Vec::with_capacity(n);
                for _ in 0..n {
                    point.push(values[c % values.len()]);
                    c /= values.len();
                }
                *counts.entry(type_of_point(&point)).or_insert(0) += 1;
            }
            for lambda in enumerate_partitions(n, None) {
                // Strict assignments: choose distinct values for the groups;
                // groups of equal size are interchangeable.
                let ell = lambda.len();
                let mut strict = if ell <= values.len() {
                    (values.len() - ell + 1..=values.len()).product::<usize>()
                } else {
                    0
                };
                for (_, count) in lambda.multiplicities() {
                    strict /= (1..=count).product::<usize>();
                }
                let expected = orbit_size(&lambda) * BigUint::from(strict);
                let actual = BigUint::from(counts.get(&lambda).copied().unwrap_or(0));
                assert_eq!(actual, expected, "n = {n}, lambda = {lambda}");
            }
        }
    }

    proptest! {
        #[test]
        fn swap_count_equals_inversions(v in proptest::collection::vec(0i64..6, 0..12)) {
            let (seq, sorted) = minimal_adjacent_transpositions(&v);
            prop_assert_eq!(seq.len(), inversion_count(&v));
            let mut expect = v.clone();
            expect.sort();
            prop_assert_eq!(&sorted, &expect);
            // Replaying the swaps reproduces the sort, and every recorded
            // swap exchanged a strictly out-of-order pair.
            let mut replay = v.clone();
            for &(j, k) in seq.swaps() {
                prop_assert_eq!(k, j + 1);
                prop_assert!(replay[j - 1] > replay[k - 1]);
                replay.swap(j - 1, k - 1);
            }
            prop_assert_eq!(replay, expect);
        }

        #[test]
        fn join_matches_face_intersection(
            cuts_a in proptest::collection::vec(any::<bool>(), 7),
            cuts_b in proptest::collection::vec(any::<bool>(), 7),
        ) {
            // Build two compositions of 8 from random cut patterns.
            let build = |cuts: &[bool]| {
                let mut parts = Vec::new();
                let mut run = 1;
                for &cut in cuts {
                    if cut {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                Composition::new(parts)
            };
            let a = build(&cuts_a);
            let b = build(&cuts_b);
            let joined = join(&a, &b).unwrap();

            // Independent oracle: merge the equality patterns positionally.
            // Coordinates i, i+1 are equal on the intersected face when they
            // are equal on either input face.
            let n = a.n();
            let forced = |c: &Composition, i: usize| {
                // true when x_i = x_{i+1} is forced by c (1-based i)
                let mut acc = 0;
                for &p in c.parts() {
                    acc += p;
                    if acc == i {
                        return false;
                    }
                    if acc > i {
                        return true;
                    }
                }
                unreachable!()
            };
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 1..n {
                if forced(&a, i) || forced(&b, i) {
                    run += 1;
                } else {
                    parts.push(run);
                    run = 1;
                }
            }
            parts.push(run);
            prop_assert_eq!(joined, Composition::new(parts));

            // The join is an upper bound of both inputs.
            let jd = join(&a, &b).unwrap();
            for c in [&a, &b] {
                let ord = composition_order(c, &jd).unwrap();
                prop_assert!(matches!(ord, CompositionOrder::Precedes | CompositionOrder::Equal));
            }
        }

        #[test]
        fn composition_roundtrip_via_largest(cuts in proptest::collection::vec(any::<bool>(), 5)) {
            // An ascending vector realizing a composition strictly has that
            // composition as its largest composition.
            let mut parts = Vec::new();
            let mut run = 1;
            for cut in cuts {
                if cut {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            let c = Composition::new(parts);
            let mut point = Vec::new();
            for (k, &p) in c.parts().iter().enumerate() {
                point.extend(std::iter::repeat_n(k as u32, p));
            }
            prop_assert_eq!(largest_composition(&point).unwrap(), c);
        }
    }
}
