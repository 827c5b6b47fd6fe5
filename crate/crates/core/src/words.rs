//! Exhaustive enumeration of the words `(Tr(b d_i) + o_i mod p)_i` for all
//! b in F_q, reporting each word's symbol histogram.
//!
//! Tr(b d) is linear in b, so with `col_k[i] = Tr(X^k d_i)` the word for b is
//! `o + sum_k b_k col_k`. Walking b in lexicographic (odometer) order changes
//! one or a few coordinates per step, each step adding one column mod p.

use std::ops::Range;

use rayon::prelude::*;

use crate::field::{Field, FieldElement};

/// Number of b values handed to one worker at a time.
const CHUNK: u64 = 243;

pub struct TraceWords {
    p: u16,
    e: usize,
    q: u64,
    /// `columns[k][i] = Tr(X^k d_i)`.
    columns: Vec<Vec<u16>>,
    offsets: Vec<u16>,
}

impl TraceWords {
    pub fn new(field: &Field, points: &[FieldElement], offsets: &[u32]) -> Self {
        assert_eq!(points.len(), offsets.len());
        let e = field.e();
        let p = field.p();
        let mut columns = vec![Vec::with_capacity(points.len()); e];
        for d in points {
            for (k, t) in field.dual_coordinates(d).into_iter().enumerate() {
                columns[k].push(t as u16);
            }
        }
        TraceWords {
            p: p as u16,
            e,
            q: field.q(),
            columns,
            offsets: offsets.iter().map(|&o| (o % p) as u16).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    /// Digits of element `index` in coefficient order (c_0 first).
    fn digits(&self, mut index: u64) -> Vec<u16> {
        let mut out = vec![0u16; self.e];
        for d in out.iter_mut().rev() {
            *d = (index % self.p as u64) as u16;
            index /= self.p as u64;
        }
        out
    }

    /// The word for the element with lexicographic index `b_index`.
    pub fn word(&self, b_index: u64) -> Vec<u16> {
        let digits = self.digits(b_index);
        let p = self.p as u64;
        (0..self.len())
            .map(|i| {
                let s: u64 = self.offsets[i] as u64
                    + digits.iter().zip(&self.columns).map(|(&b, col)| b as u64 * col[i] as u64).sum::<u64>();
                (s % p) as u16
            })
            .collect()
    }

    /// Visits `(b_index, histogram)` for every b in `range`, in order.
    pub fn for_each_histogram(&self, range: Range<u64>, mut visit: impl FnMut(u64, &[u64])) {
        if range.is_empty() {
            return;
        }
        let p = self.p;
        let mut digits = self.digits(range.start);
        let mut word = self.word(range.start);
        let mut hist = vec![0u64; p as usize];
        let mut b = range.start;
        loop {
            histogram(&word, p, &mut hist);
            visit(b, &hist);
            b += 1;
            if b == range.end {
                break;
            }
            let mut k = self.e;
            loop {
                k -= 1;
                add_column(&mut word, &self.columns[k], p);
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    /// Folds histograms over all of F_q in parallel. The result does not
    /// depend on the partition as long as `merge` is associative and
    /// commutative.
    pub fn fold_all<T, I, F, M>(&self, identity: I, fold: F, merge: M) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, u64, &[u64]) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let chunks = self.q.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut acc = identity();
                let start = chunk * CHUNK;
                let end = (start + CHUNK).min(self.q);
                self.for_each_histogram(start..end, |b, h| fold(&mut acc, b, h));
                acc
            })
            .reduce(&identity, &merge)
    }
}

#[inline]
fn add_column(word: &mut [u16], column: &[u16], p: u16) {
    for (w, &c) in word.iter_mut().zip(column) {
        let s = *w + c;
        *w = if s >= p { s - p } else { s };
    }
}

#[inline]
fn histogram(word: &[u16], p: u16, hist: &mut [u64]) {
    if p <= 8 {
        // per-symbol counting vectorizes; scattered increments do not
        for (s, h) in hist.iter_mut().enumerate() {
            let s = s as u16;
            *h = word.iter().map(|&w| (w == s) as u64).sum();
        }
    } else {
        hist.iter_mut().for_each(|h| *h = 0);
        for &w in word {
            hist[w as usize] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_matches_direct_traces() {
        for (p, e) in [(3, 2), (3, 4), (5, 2), (11, 2)] {
            let field = Field::build(p, e, 1).unwrap();
            let points: Vec<_> = field.elements().step_by(3).collect();
            let offsets: Vec<u32> = (0..points.len() as u32).map(|i| i % p).collect();
            let words = TraceWords::new(&field, &points, &offsets);
            let mut seen = 0;
            words.for_each_histogram(0..field.q(), |b_index, hist| {
                let b = field.element_at(b_index);
                let mut expected = vec![0u64; p as usize];
                for (d, &o) in points.iter().zip(&offsets) {
                    let s = (field.trace(&field.mul(&b, d)).value() + o) % p;
                    expected[s as usize] += 1;
                }
                assert_eq!(hist, &expected[..]);
                assert_eq!(words.word(b_index).len(), points.len());
                seen += 1;
            });
            assert_eq!(seen, field.q());
        }
    }

    #[test]
    fn partial_ranges_agree_with_full_walk() {
        let field = Field::build(3, 4, 1).unwrap();
        let points: Vec<_> = field.elements().collect();
        let words = TraceWords::new(&field, &points, &vec![0; points.len()]);
        let mut full = Vec::new();
        words.for_each_histogram(0..81, |_, h| full.push(h.to_vec()));
        let mut pieces = Vec::new();
        for r in [0..10, 10..11, 11..50, 50..81] {
            words.for_each_histogram(r, |_, h| pieces.push(h.to_vec()));
        }
        assert_eq!(full, pieces);
    }
}
