//! Generators for the explicit word families over the twisted alphabet
//! `{a, b, c, t}` and the structured identities tying them together.
//!
//! `w_n = t^n c t^-n a t^n c^-1 t^-n a^-1` is the length-`(4n+4)`
//! commutator loop; its length-`(2n+2)` cyclic subwords are exactly the
//! four families `u_k`, `u'_k`, `u''_k`, `u'''_k`. The variants are
//! generated from their own explicit formulas rather than by applying the
//! automorphisms to `u_k`, so the identity checks below are genuine
//! cross-checks instead of tautologies.

use std::sync::Arc;

use crate::cayley::DistanceOracle;
use crate::group::{apply_automorphism, Automorphism, MarkedAlphabet};
use crate::words::{Letter, Sign, Word};
use crate::{Error, Result};

/// Which of the four length-`(2n+2)` families to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyVariant {
    /// `u_k = t^(n-k) c t^-n a t^k`
    Plain,
    /// `u'_k = t^-(n-k) a t^n c^-1 t^-k`
    Prime,
    /// `u''_k = t^(n-k) c^-1 t^-n a^-1 t^k`
    DoublePrime,
    /// `u'''_k = t^-(n-k) a^-1 t^n c t^-k`
    TriplePrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub n: usize,
    pub k: usize,
    pub variant: FamilyVariant,
}

impl FamilySpec {
    pub fn new(n: usize, k: usize, variant: FamilyVariant) -> FamilySpec {
        FamilySpec { n, k, variant }
    }

    pub fn plain(n: usize, k: usize) -> FamilySpec {
        FamilySpec::new(n, k, FamilyVariant::Plain)
    }
}

struct Builder {
    alphabet: Arc<MarkedAlphabet>,
    letters: Vec<Letter>,
}

impl Builder {
    fn twisted() -> Builder {
        Builder { alphabet: MarkedAlphabet::twisted(), letters: Vec::new() }
    }

    fn power(mut self, symbol: char, exponent: i64) -> Builder {
        let sym = self.alphabet.index_of(symbol).expect("twisted symbol");
        let sign = if exponent >= 0 { Sign::Pos } else { Sign::Neg };
        self.letters
            .extend(std::iter::repeat_n(Letter::new(sym, sign), exponent.unsigned_abs() as usize));
        self
    }

    fn finish(self) -> Word {
        Word::from_letters(self.letters, self.alphabet).expect("letters from this alphabet")
    }
}

/// The literal `4n + 4` letter word `t^n c t^-n a t^n c^-1 t^-n a^-1`;
/// null in `G` for every `n`.
pub fn w_n(n: usize) -> Word {
    let n = n as i64;
    Builder::twisted()
        .power('t', n)
        .power('c', 1)
        .power('t', -n)
        .power('a', 1)
        .power('t', n)
        .power('c', -1)
        .power('t', -n)
        .power('a', -1)
        .finish()
}

/// The literal word of the requested family; always `2n + 2` letters.
pub fn u_family(spec: &FamilySpec) -> Result<Word> {
    if spec.k > spec.n {
        return Err(Error::InvalidSpec { n: spec.n, k: spec.k });
    }
    let n = spec.n as i64;
    let k = spec.k as i64;
    let word = match spec.variant {
        FamilyVariant::Plain => Builder::twisted()
            .power('t', n - k)
            .power('c', 1)
            .power('t', -n)
            .power('a', 1)
            .power('t', k),
        FamilyVariant::Prime => Builder::twisted()
            .power('t', -(n - k))
            .power('a', 1)
            .power('t', n)
            .power('c', -1)
            .power('t', -k),
        FamilyVariant::DoublePrime => Builder::twisted()
            .power('t', n - k)
            .power('c', -1)
            .power('t', -n)
            .power('a', -1)
            .power('t', k),
        FamilyVariant::TriplePrime => Builder::twisted()
            .power('t', -(n - k))
            .power('a', -1)
            .power('t', n)
            .power('c', 1)
            .power('t', -k),
    }
    .finish();
    debug_assert_eq!(word.len(), 2 * spec.n + 2);
    Ok(word)
}

/// Checks, for all `0 <= k <= n`, the exact letter-sequence identities
/// `u'_(n-k) = phi(u_k^-1)`, `u''_k = phi(psi(u_k))`,
/// `u'''_(n-k) = psi(u_k^-1)`, and that `u_k u''_k` is a cyclic conjugate
/// of `w_n`.
pub fn verify_claim_identities(n: usize) -> bool {
    let wn = w_n(n);
    (0..=n).all(|k| {
        let u = u_family(&FamilySpec::plain(n, k)).expect("k <= n");
        let prime = u_family(&FamilySpec::new(n, n - k, FamilyVariant::Prime)).expect("k <= n");
        let dprime = u_family(&FamilySpec::new(n, k, FamilyVariant::DoublePrime)).expect("k <= n");
        let tprime =
            u_family(&FamilySpec::new(n, n - k, FamilyVariant::TriplePrime)).expect("k <= n");

        let inv = u.inverted();
        if prime != apply_automorphism(Automorphism::Phi, &inv) {
            return false;
        }
        if dprime
            != apply_automorphism(Automorphism::Phi, &apply_automorphism(Automorphism::Psi, &u))
        {
            return false;
        }
        if tprime != apply_automorphism(Automorphism::Psi, &inv) {
            return false;
        }

        let pair = u.concat(&dprime).expect("same alphabet");
        (0..=wn.len()).any(|i| wn.cyclic_conjugate(i).expect("in range") == pair)
    })
}

/// Row of the `<b, t> = Z^2` isometric-embedding table: the element
/// `b^m t^l` should sit at distance `|m| + |l|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Z2Row {
    pub m: i64,
    pub l: i64,
    pub expected: usize,
    pub actual: usize,
}

impl Z2Row {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

/// Exact distances of `b^m t^l` for all `|m|, |l| <= bound`, against the
/// expected `|m| + |l|`.
pub fn z2_distance_table(bound: usize, oracle: &mut DistanceOracle) -> Result<Vec<Z2Row>> {
    let bound = bound as i64;
    let mut rows = Vec::new();
    for m in -bound..=bound {
        for l in -bound..=bound {
            let word = Builder::twisted().power('b', m).power('t', l).finish();
            let element = oracle.alphabet().eval(&word)?;
            let actual = oracle.distance_from_identity(&element)?;
            rows.push(Z2Row {
                m,
                l,
                expected: (m.unsigned_abs() + l.unsigned_abs()) as usize,
                actual,
            });
        }
    }
    Ok(rows)
}

/// CSV serialization of the table, header `m,l,expected,actual,ok`.
pub fn z2_table_csv(rows: &[Z2Row]) -> String {
    let mut out = String::from("m,l,expected,actual,ok\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.m, row.l, row.expected, row.actual, row.ok()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_n_examples() {
        assert_eq!(w_n(0).format(), "caCA");
        assert_eq!(w_n(5).format(), "t5cT5at5CT5A");
        assert_eq!(w_n(10).len(), 44);
        for n in 0..=10 {
            assert_eq!(w_n(n).len(), 4 * n + 4);
        }
    }

    #[test]
    fn u_family_examples() {
        let u = u_family(&FamilySpec::plain(2, 0)).unwrap();
        assert_eq!(u.format(), "t2cT2a");
        assert_eq!(u.len(), 6);

        let u = u_family(&FamilySpec::plain(2, 2)).unwrap();
        assert_eq!(u.format(), "cT2at2");

        let u = u_family(&FamilySpec::new(3, 1, FamilyVariant::DoublePrime)).unwrap();
        assert_eq!(u.format(), "t2CT3At");

        assert_eq!(
            u_family(&FamilySpec::plain(2, 3)),
            Err(Error::InvalidSpec { n: 2, k: 3 })
        );
    }

    #[test]
    fn family_lengths() {
        let variants = [
            FamilyVariant::Plain,
            FamilyVariant::Prime,
            FamilyVariant::DoublePrime,
            FamilyVariant::TriplePrime,
        ];
        for n in 0..=10 {
            for k in 0..=n {
                for variant in variants {
                    let word = u_family(&FamilySpec::new(n, k, variant)).unwrap();
                    assert_eq!(word.len(), 2 * n + 2);
                }
            }
        }
    }

    #[test]
    fn claim_identities_hold() {
        assert!(verify_claim_identities(0));
        assert!(verify_claim_identities(3));
        assert!(verify_claim_identities(10));
    }

    #[test]
    fn every_cyclic_subword_of_half_length_is_a_family_word() {
        let variants = [
            FamilyVariant::Plain,
            FamilyVariant::Prime,
            FamilyVariant::DoublePrime,
            FamilyVariant::TriplePrime,
        ];
        for n in 0..=6usize {
            let wn = w_n(n);
            let family: Vec<Word> = variants
                .iter()
                .flat_map(|&variant| {
                    (0..=n).map(move |k| u_family(&FamilySpec::new(n, k, variant)).unwrap())
                })
                .collect();
            for start in 0..wn.len() {
                let sub = wn.cyclic_subword(start, 2 * n + 2).unwrap();
                assert!(
                    family.contains(&sub),
                    "n = {n}, start = {start}: {} not in family",
                    sub.format()
                );
            }
        }
    }

    #[test]
    fn z2_rows() {
        let mut oracle = DistanceOracle::new(MarkedAlphabet::twisted());
        let rows = z2_distance_table(4, &mut oracle).unwrap();
        assert_eq!(rows.len(), 81);
        assert!(rows.iter().all(Z2Row::ok));
        let find = |m: i64, l: i64| rows.iter().find(|r| r.m == m && r.l == l).unwrap().actual;
        assert_eq!(find(0, 0), 0);
        assert_eq!(find(3, 2), 5);
        assert_eq!(find(-4, 4), 8);
    }

    #[test]
    fn z2_csv_shape() {
        let rows = vec![Z2Row { m: -1, l: 2, expected: 3, actual: 3 }];
        assert_eq!(z2_table_csv(&rows), "m,l,expected,actual,ok\n-1,2,3,3,true\n");
    }
}
