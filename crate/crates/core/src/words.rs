//! Letters, words, the compact text grammar, free reduction, cyclic
//! operations, and seeded generation of random null words.
//!
//! A [`Word`] is a finite sequence of signed generator symbols over a
//! governing [`MarkedAlphabet`]. The text grammar used everywhere (CLI,
//! CSV, certificates) is: lowercase letter = positive generator, uppercase
//! letter = its inverse, an optional decimal repeat count >= 1 after a
//! letter, whitespace ignored. `"t5cT5at5CT5A"` is `t^5 c t^-5 a t^5 c^-1
//! t^-5 a^-1`.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::MarkedAlphabet;
use crate::{Error, Result};

/// Orientation of a letter. `Pos` sorts before `Neg`, which fixes the
/// letter order used by canonical forms and BFS tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A signed generator symbol. `sym` indexes into the governing alphabet's
/// declaration order; the numeric encoding keeps BFS state keys compact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub sym: u8,
    pub sign: Sign,
}

impl Letter {
    pub fn new(sym: u8, sign: Sign) -> Letter {
        Letter { sym, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter { sym: self.sym, sign: self.sign.flip() }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.sym == other.sym && self.sign != other.sign
    }
}

/// An ordered sequence of letters over a marked alphabet. The empty word
/// is valid and represents the identity. Immutable; all operations return
/// fresh words.
#[derive(Debug, Clone)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Arc<MarkedAlphabet>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Word) -> bool {
        self.letters == other.letters
            && (Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet)
    }
}

impl Eq for Word {}

impl Word {
    pub fn empty(alphabet: Arc<MarkedAlphabet>) -> Word {
        Word { letters: Vec::new(), alphabet }
    }

    /// Builds a word from raw letters, checking every symbol index is
    /// declared in `alphabet`.
    pub fn from_letters(letters: Vec<Letter>, alphabet: Arc<MarkedAlphabet>) -> Result<Word> {
        for l in &letters {
            if usize::from(l.sym) >= alphabet.len() {
                return Err(Error::UnknownGenerator('?'));
            }
        }
        Ok(Word { letters, alphabet })
    }

    /// Parses the compact text grammar.
    pub fn parse(text: &str, alphabet: &Arc<MarkedAlphabet>) -> Result<Word> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut current: Option<(Letter, char)> = None;
        let mut count: Option<usize> = None;

        fn flush(
            letters: &mut Vec<Letter>,
            current: &mut Option<(Letter, char)>,
            count: &mut Option<usize>,
        ) -> Result<()> {
            if let Some((letter, symbol)) = current.take() {
                let n = match count.take() {
                    None => 1,
                    Some(0) => {
                        return Err(Error::MalformedCount {
                            symbol,
                            reason: "count must be at least 1".into(),
                        })
                    }
                    Some(n) => n,
                };
                letters.extend(std::iter::repeat_n(letter, n));
            }
            Ok(())
        }

        for ch in text.chars() {
            if ch.is_whitespace() {
                continue;
            }
            if let Some(d) = ch.to_digit(10) {
                let symbol = match &current {
                    Some((_, symbol)) => *symbol,
                    None => {
                        return Err(Error::MalformedCount {
                            symbol: ch,
                            reason: "count with no preceding generator".into(),
                        })
                    }
                };
                let acc = count.unwrap_or(0);
                count = Some(
                    acc.checked_mul(10)
                        .and_then(|v| v.checked_add(d as usize))
                        .ok_or_else(|| Error::MalformedCount {
                            symbol,
                            reason: "count overflow".into(),
                        })?,
                );
                continue;
            }
            flush(&mut letters, &mut current, &mut count)?;
            let lower = ch.to_ascii_lowercase();
            let sym = alphabet.index_of(lower).ok_or(Error::UnknownGenerator(ch))?;
            let sign = if ch.is_ascii_lowercase() { Sign::Pos } else { Sign::Neg };
            current = Some((Letter::new(sym, sign), ch));
        }
        flush(&mut letters, &mut current, &mut count)?;
        Ok(Word { letters, alphabet: Arc::clone(alphabet) })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet(&self) -> &Arc<MarkedAlphabet> {
        &self.alphabet
    }

    /// The character a letter prints as (uppercase when inverted).
    pub fn letter_char(&self, l: Letter) -> char {
        let c = self.alphabet.symbol(l.sym);
        match l.sign {
            Sign::Pos => c,
            Sign::Neg => c.to_ascii_uppercase(),
        }
    }

    /// Canonical compact text: run-length counts for runs of length >= 2.
    /// `Word::parse` of the output reproduces the word exactly.
    pub fn format(&self) -> String {
        format_run_length(self.letters.iter().map(|&l| self.letter_char(l)))
    }

    /// Free reduction over the free group on this word's symbols: deletes
    /// adjacent inverse pairs until none remain. Single stack pass; the
    /// reduced word is the unique normal form, independent of deletion
    /// order.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|&top| top.is_inverse_of(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack, alphabet: Arc::clone(&self.alphabet) }
    }

    /// Rotation: letters `i..` followed by letters `..i`. `i = len` is
    /// allowed and equals the identity rotation.
    pub fn cyclic_conjugate(&self, i: usize) -> Result<Word> {
        if i > self.letters.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.letters.len() });
        }
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[i..]);
        letters.extend_from_slice(&self.letters[..i]);
        Ok(Word { letters, alphabet: Arc::clone(&self.alphabet) })
    }

    /// Formal inverse: reverse the letters and flip every sign.
    pub fn inverted(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word { letters, alphabet: Arc::clone(&self.alphabet) }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if !(Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, alphabet: Arc::clone(&self.alphabet) })
    }

    /// The subword of `len` letters starting at cyclic position `start`.
    pub fn cyclic_subword(&self, start: usize, len: usize) -> Result<Word> {
        if start >= self.letters.len().max(1) || len > self.letters.len() {
            return Err(Error::IndexOutOfRange { index: start.max(len), len: self.letters.len() });
        }
        let n = self.letters.len();
        let letters = (0..len).map(|j| self.letters[(start + j) % n]).collect();
        Ok(Word { letters, alphabet: Arc::clone(&self.alphabet) })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Run-length text for a stream of display characters (shared with
/// normal-form printing).
pub(crate) fn format_run_length(chars: impl Iterator<Item = char>) -> String {
    let mut out = String::new();
    let mut run: Option<(char, usize)> = None;
    for c in chars.chain(std::iter::once('\0')) {
        match run {
            Some((prev, n)) if prev == c => run = Some((prev, n + 1)),
            Some((prev, n)) => {
                out.push(prev);
                if n > 1 {
                    out.push_str(&n.to_string());
                }
                run = Some((c, 1));
            }
            None => run = Some((c, 1)),
        }
    }
    out
}

/// Generates a seeded random word over the standard alphabet `{a,b,c,d}`
/// that evaluates to the identity of `G` and has exactly `target_length`
/// letters.
///
/// Construction: split the letters into pairs, assign each pair to the
/// `{a,b}` factor with probability `factor_bias`; draw a uniform
/// non-crossing perfect matching (uniform balanced-parenthesis sequence,
/// via the cycle lemma) independently per factor; give each matched pair a
/// uniform generator of its factor and a uniform orientation; interleave
/// the two factor words by a uniform shuffle of position labels.
///
/// The distribution is not uniform over null words of the given length
/// (non-crossing matchings bias toward tree-like cancellation), but its
/// support is all of them: every null word of a free group admits a
/// non-crossing cancellation matching. Deterministic given `seed`.
pub fn random_null_word(target_length: usize, factor_bias: f64, seed: u64) -> Result<Word> {
    if !target_length.is_multiple_of(2) {
        return Err(Error::OddLength(target_length));
    }
    let std = MarkedAlphabet::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bias = factor_bias.clamp(0.0, 1.0);

    let pairs = target_length / 2;
    let ab_pairs = (0..pairs).filter(|_| rng.gen_bool(bias)).count();
    let cd_pairs = pairs - ab_pairs;

    let ab = random_factor_null(&mut rng, ab_pairs, 0);
    let cd = random_factor_null(&mut rng, cd_pairs, 2);

    let mut labels: Vec<bool> = Vec::with_capacity(target_length);
    labels.extend(std::iter::repeat_n(true, 2 * ab_pairs));
    labels.extend(std::iter::repeat_n(false, 2 * cd_pairs));
    labels.shuffle(&mut rng);

    let mut ab_iter = ab.into_iter();
    let mut cd_iter = cd.into_iter();
    let letters = labels
        .into_iter()
        .map(|is_ab| if is_ab { ab_iter.next().unwrap() } else { cd_iter.next().unwrap() })
        .collect();
    Ok(Word { letters, alphabet: std })
}

/// Null word of `pairs` cancelling pairs over the factor whose symbols
/// start at index `base` (0 for `{a,b}`, 2 for `{c,d}` in the standard
/// alphabet).
fn random_factor_null(rng: &mut ChaCha8Rng, pairs: usize, base: u8) -> Vec<Letter> {
    let dyck = random_dyck(rng, pairs);
    let mut letters = vec![Letter::new(0, Sign::Pos); 2 * pairs];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &open) in dyck.iter().enumerate() {
        if open {
            stack.push(i);
        } else {
            let j = stack.pop().expect("dyck word is balanced");
            let sym = base + rng.gen_range(0..2u8);
            let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
            letters[j] = Letter::new(sym, sign);
            letters[i] = Letter::new(sym, sign.flip());
        }
    }
    letters
}

/// Uniform balanced-parenthesis sequence of `pairs` pairs via the cycle
/// lemma: shuffle `pairs + 1` opens and `pairs` closes; exactly one
/// rotation is strictly dominating, and dropping its leading open leaves a
/// uniform Dyck word.
fn random_dyck(rng: &mut ChaCha8Rng, pairs: usize) -> Vec<bool> {
    if pairs == 0 {
        return Vec::new();
    }
    let mut steps: Vec<bool> = Vec::with_capacity(2 * pairs + 1);
    steps.extend(std::iter::repeat_n(true, pairs + 1));
    steps.extend(std::iter::repeat_n(false, pairs));
    steps.shuffle(rng);

    let mut min_sum = i64::MAX;
    let mut min_pos = 0;
    let mut sum = 0i64;
    for (i, &open) in steps.iter().enumerate() {
        sum += if open { 1 } else { -1 };
        if sum <= min_sum {
            min_sum = sum;
            min_pos = i;
        }
    }
    let n = steps.len();
    let start = (min_pos + 1) % n;
    let rotated: Vec<bool> = (0..n).map(|j| steps[(start + j) % n]).collect();
    debug_assert!(rotated[0]);
    rotated[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::MarkedAlphabet;

    fn std() -> Arc<MarkedAlphabet> {
        MarkedAlphabet::standard()
    }

    fn twisted() -> Arc<MarkedAlphabet> {
        MarkedAlphabet::twisted()
    }

    fn w(text: &str, alphabet: &Arc<MarkedAlphabet>) -> Word {
        Word::parse(text, alphabet).unwrap()
    }

    /// Independent fixed-point rewrite oracle: repeatedly delete the first
    /// adjacent inverse pair until none remains.
    fn rewrite_reduce(word: &Word) -> Word {
        let mut letters = word.letters().to_vec();
        loop {
            let pos = (1..letters.len()).find(|&i| letters[i - 1].is_inverse_of(letters[i]));
            match pos {
                Some(i) => {
                    letters.drain(i - 1..=i);
                }
                None => break,
            }
        }
        Word::from_letters(letters, Arc::clone(word.alphabet())).unwrap()
    }

    #[test]
    fn parse_expands_tokens() {
        let word = w("tcTatCTA", &twisted());
        assert_eq!(word.len(), 8);
        assert_eq!(word.format(), "tcTatCTA");
        let signs: Vec<Sign> = word.letters().iter().map(|l| l.sign).collect();
        assert_eq!(
            signs,
            vec![
                Sign::Pos,
                Sign::Pos,
                Sign::Neg,
                Sign::Pos,
                Sign::Pos,
                Sign::Neg,
                Sign::Neg,
                Sign::Neg
            ]
        );
    }

    #[test]
    fn parse_repeat_counts() {
        let word = w("t5cT5at5CT5A", &twisted());
        assert_eq!(word.len(), 24);
        let by_hand = w("tttttcTTTTTatttttCTTTTTA", &twisted());
        assert_eq!(word, by_hand);
    }

    #[test]
    fn parse_rejects_undeclared_symbol() {
        assert_eq!(Word::parse("x", &std()), Err(Error::UnknownGenerator('x')));
        assert_eq!(Word::parse("t", &std()), Err(Error::UnknownGenerator('t')));
    }

    #[test]
    fn parse_rejects_bad_counts() {
        assert!(matches!(Word::parse("a0", &std()), Err(Error::MalformedCount { .. })));
        assert!(matches!(Word::parse("3a", &std()), Err(Error::MalformedCount { .. })));
        assert!(matches!(Word::parse("a00", &std()), Err(Error::MalformedCount { .. })));
    }

    #[test]
    fn parse_ignores_whitespace() {
        assert_eq!(w(" a 2 B ", &std()), w("a2B", &std()));
    }

    #[test]
    fn format_examples() {
        assert_eq!(Word::empty(std()).format(), "");
        assert_eq!(w("aaB", &std()).format(), "a2B");
        assert_eq!(w("t5cT5at5CT5A", &twisted()).format(), "t5cT5at5CT5A");
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("aA", &std()).free_reduce(), Word::empty(std()));
        assert_eq!(w("abBA", &std()).free_reduce(), Word::empty(std()));
        let input = w("aabBAb", &std());
        assert_eq!(input.free_reduce(), rewrite_reduce(&input));
        assert_eq!(input.free_reduce().format(), "ab");
    }

    #[test]
    fn free_reduce_matches_rewrite_oracle_on_samples() {
        for text in ["aAbB", "abABba", "aaAAbbBB", "abcACB", "dDdDdD", "bAaB"] {
            let word = w(text, &std());
            assert_eq!(word.free_reduce(), rewrite_reduce(&word), "input {text}");
        }
    }

    #[test]
    fn cyclic_conjugate_examples() {
        let abc = w("abc", &std());
        assert_eq!(abc.cyclic_conjugate(0).unwrap(), abc);
        assert_eq!(abc.cyclic_conjugate(1).unwrap(), w("bca", &std()));
        assert_eq!(abc.cyclic_conjugate(3).unwrap(), abc);
        assert_eq!(
            abc.cyclic_conjugate(4),
            Err(Error::IndexOutOfRange { index: 4, len: 3 })
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("ab", &std()).inverted(), w("BA", &std()));
        assert_eq!(Word::empty(std()).inverted(), Word::empty(std()));
        assert_eq!(w("tcTatCTA", &twisted()).inverted(), w("atcTAtCT", &twisted()));
    }

    #[test]
    fn random_null_word_edge_cases() {
        assert_eq!(random_null_word(0, 0.5, 7).unwrap(), Word::empty(std()));
        assert_eq!(random_null_word(3, 0.5, 7), Err(Error::OddLength(3)));

        for seed in 0..20 {
            let word = random_null_word(2, 1.0, seed).unwrap();
            assert_eq!(word.len(), 2);
            let first = word.letters()[0];
            assert!(first.sym < 2, "bias 1.0 must stay in the ab factor");
            assert_eq!(word.letters()[1], first.inverse());
        }
    }

    #[test]
    fn random_null_word_is_deterministic() {
        let a = random_null_word(40, 0.5, 99).unwrap();
        let b = random_null_word(40, 0.5, 99).unwrap();
        assert_eq!(a, b);
        let c = random_null_word(40, 0.5, 100).unwrap();
        assert_ne!(a, c, "different seeds should give different words");
    }

    #[test]
    fn random_matchings_cover_all_noncrossing_shapes() {
        // For 3 pairs there are five non-crossing matchings (the Catalan
        // count); all of them should occur across seeds.
        let mut shapes = std::collections::HashSet::new();
        for seed in 0..200 {
            let word = random_null_word(6, 1.0, seed).unwrap();
            let mut stack: Vec<usize> = Vec::new();
            let mut pairs = Vec::new();
            for (i, &l) in word.letters().iter().enumerate() {
                match stack.last() {
                    Some(&j) if word.letters()[j].is_inverse_of(l) => {
                        pairs.push((stack.pop().unwrap(), i));
                    }
                    _ => stack.push(i),
                }
            }
            assert!(stack.is_empty());
            pairs.sort_unstable();
            shapes.insert(pairs);
        }
        assert_eq!(shapes.len(), 5);
    }
}
