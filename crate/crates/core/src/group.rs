//! The group `G = F(a,b) x F(c,d)`: normal forms, marked alphabets,
//! evaluation of words, the letter-flip automorphisms, and relator checks.
//!
//! An element is stored as a pair of freely reduced factor words, one per
//! free factor; equality of elements is letter-wise equality of the pair.
//! Factor letters are encoded as `i8`: `1`/`2` for the factor's first and
//! second generator, negated for inverses. Normal forms always print in
//! standard letters, e.g. the twisted generator `t` evaluates to `(B, d)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::words::{format_run_length, Letter, Sign, Word};
use crate::{Error, Result};

/// A freely reduced word in one rank-2 free factor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FactorWord(SmallVec<[i8; 16]>);

impl FactorWord {
    pub fn new() -> FactorWord {
        FactorWord(SmallVec::new())
    }

    /// Reduces as it builds, so the result is reduced whenever the input
    /// letters came from concatenating reduced words.
    pub fn from_letters(letters: impl IntoIterator<Item = i8>) -> FactorWord {
        let mut fw = FactorWord::new();
        for l in letters {
            fw.push_reduced(l);
        }
        fw
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    /// Appends one letter, cancelling against the current last letter.
    pub fn push_reduced(&mut self, letter: i8) {
        debug_assert!(letter != 0 && letter.abs() <= 2);
        if self.0.last() == Some(&-letter) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    /// Appends a reduced word, cancelling across the seam.
    pub fn extend_reduced(&mut self, other: &FactorWord) {
        for &l in other.letters() {
            self.push_reduced(l);
        }
    }

    pub fn inverse(&self) -> FactorWord {
        FactorWord(self.0.iter().rev().map(|&l| -l).collect())
    }
}

/// Canonical element of `G`: a pair of freely reduced factor words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    ab: FactorWord,
    cd: FactorWord,
}

impl NormalForm {
    pub fn identity() -> NormalForm {
        NormalForm::default()
    }

    pub fn new(ab: FactorWord, cd: FactorWord) -> NormalForm {
        NormalForm { ab, cd }
    }

    pub fn is_identity(&self) -> bool {
        self.ab.is_empty() && self.cd.is_empty()
    }

    pub fn ab(&self) -> &FactorWord {
        &self.ab
    }

    pub fn cd(&self) -> &FactorWord {
        &self.cd
    }

    /// Reduced length `|p| + |q|`, the word length over `{a,b,c,d}`.
    pub fn total_len(&self) -> usize {
        self.ab.len() + self.cd.len()
    }

    /// Factor-wise concatenation followed by free reduction; the factors
    /// multiply independently because `G` is a direct product.
    pub fn multiply(&self, rhs: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        out.ab.extend_reduced(&rhs.ab);
        out.cd.extend_reduced(&rhs.cd);
        out
    }

    pub fn inverse(&self) -> NormalForm {
        NormalForm { ab: self.ab.inverse(), cd: self.cd.inverse() }
    }

    fn factor_chars(fw: &FactorWord, pos: [char; 2]) -> impl Iterator<Item = char> + '_ {
        fw.letters().iter().map(move |&l| {
            let c = pos[(l.abs() - 1) as usize];
            if l > 0 {
                c
            } else {
                c.to_ascii_uppercase()
            }
        })
    }
}

impl fmt::Display for NormalForm {
    /// Prints as `(p, q)` in standard letters, `1` for an empty part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |fw: &FactorWord, pos: [char; 2]| -> String {
            if fw.is_empty() {
                "1".to_string()
            } else {
                format_run_length(NormalForm::factor_chars(fw, pos))
            }
        };
        write!(f, "({}, {})", part(&self.ab, ['a', 'b']), part(&self.cd, ['c', 'd']))
    }
}

/// The two Cayley-graph automorphisms used by the geodesic-family checks:
/// `Phi` sends `a` to `a^-1` fixing the other generators, `Psi` does the
/// same for `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Automorphism {
    Phi,
    Psi,
}

/// Applies the automorphism letter-wise: flips the sign of every `a`
/// letter (`Phi`) or every `c` letter (`Psi`).
pub fn apply_automorphism(which: Automorphism, w: &Word) -> Word {
    let target = match which {
        Automorphism::Phi => 'a',
        Automorphism::Psi => 'c',
    };
    let letters = w
        .letters()
        .iter()
        .map(|&l| {
            if w.alphabet().symbol(l.sym) == target {
                l.inverse()
            } else {
                l
            }
        })
        .collect();
    Word::from_letters(letters, Arc::clone(w.alphabet())).expect("same alphabet")
}

/// A finite generating set given as symbols mapped to elements of `G`.
/// Symbols are distinct ascii lowercase letters; no symbol may map to the
/// identity (which keeps the Cayley graph loop-free).
#[derive(Debug, PartialEq, Eq)]
pub struct MarkedAlphabet {
    name: String,
    symbols: Vec<char>,
    images: Vec<NormalForm>,
    inverse_images: Vec<NormalForm>,
}

impl MarkedAlphabet {
    /// `{a, b, c, d}` mapping onto the evident generators.
    pub fn standard() -> Arc<MarkedAlphabet> {
        static STD: OnceLock<Arc<MarkedAlphabet>> = OnceLock::new();
        Arc::clone(STD.get_or_init(|| {
            let gen = |ab: &[i8], cd: &[i8]| {
                NormalForm::new(
                    FactorWord::from_letters(ab.iter().copied()),
                    FactorWord::from_letters(cd.iter().copied()),
                )
            };
            Arc::new(
                MarkedAlphabet::build(
                    "std",
                    vec![
                        ('a', gen(&[1], &[])),
                        ('b', gen(&[2], &[])),
                        ('c', gen(&[], &[1])),
                        ('d', gen(&[], &[2])),
                    ],
                )
                .expect("standard alphabet is valid"),
            )
        }))
    }

    /// `{a, b, c, t}` with `t = d b^-1`, whose normal form is `(b^-1, d)`
    /// because the factors commute.
    pub fn twisted() -> Arc<MarkedAlphabet> {
        static TWISTED: OnceLock<Arc<MarkedAlphabet>> = OnceLock::new();
        Arc::clone(TWISTED.get_or_init(|| {
            let gen = |ab: &[i8], cd: &[i8]| {
                NormalForm::new(
                    FactorWord::from_letters(ab.iter().copied()),
                    FactorWord::from_letters(cd.iter().copied()),
                )
            };
            Arc::new(
                MarkedAlphabet::build(
                    "twisted",
                    vec![
                        ('a', gen(&[1], &[])),
                        ('b', gen(&[2], &[])),
                        ('c', gen(&[], &[1])),
                        ('t', gen(&[-2], &[2])),
                    ],
                )
                .expect("twisted alphabet is valid"),
            )
        }))
    }

    /// A user-defined generating set; every image must be nontrivial.
    pub fn custom(name: &str, generators: Vec<(char, NormalForm)>) -> Result<Arc<MarkedAlphabet>> {
        MarkedAlphabet::build(name, generators).map(Arc::new)
    }

    /// Parses the CLI syntax `"sym=word,..."` where each word is over the
    /// standard alphabet, e.g. `"t=dB"` recovers the twisted `t`.
    pub fn custom_from_spec(spec: &str) -> Result<Arc<MarkedAlphabet>> {
        let std = MarkedAlphabet::standard();
        let mut generators = Vec::new();
        for entry in spec.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (sym, image_text) = entry
                .split_once('=')
                .ok_or_else(|| Error::BadSymbol(entry.chars().next().unwrap_or('?')))?;
            let sym = sym.trim();
            let mut chars = sym.chars();
            let symbol = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::BadSymbol(sym.chars().next().unwrap_or('?'))),
            };
            let image = std.eval(&Word::parse(image_text.trim(), &std)?)?;
            generators.push((symbol, image));
        }
        MarkedAlphabet::custom("custom", generators)
    }

    fn build(name: &str, generators: Vec<(char, NormalForm)>) -> Result<MarkedAlphabet> {
        if generators.is_empty() {
            return Err(Error::BadSymbol('?'));
        }
        let mut symbols = Vec::with_capacity(generators.len());
        let mut images = Vec::with_capacity(generators.len());
        for (symbol, image) in generators {
            if !symbol.is_ascii_lowercase() || !symbol.is_ascii_alphabetic() {
                return Err(Error::BadSymbol(symbol));
            }
            if symbols.contains(&symbol) {
                return Err(Error::BadSymbol(symbol));
            }
            if image.is_identity() {
                return Err(Error::TrivialImage(symbol));
            }
            symbols.push(symbol);
            images.push(image);
        }
        let inverse_images = images.iter().map(NormalForm::inverse).collect();
        Ok(MarkedAlphabet { name: name.to_string(), symbols, images, inverse_images })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, sym: u8) -> char {
        self.symbols[usize::from(sym)]
    }

    pub fn index_of(&self, symbol: char) -> Option<u8> {
        self.symbols.iter().position(|&c| c == symbol).map(|i| i as u8)
    }

    /// Image of a signed letter.
    pub fn image(&self, letter: Letter) -> &NormalForm {
        match letter.sign {
            Sign::Pos => &self.images[usize::from(letter.sym)],
            Sign::Neg => &self.inverse_images[usize::from(letter.sym)],
        }
    }

    /// The evaluation homomorphism: product of the letters' images.
    /// Accepts words over other alphabets by resolving symbols per
    /// character; undeclared characters are `UnknownGenerator`.
    pub fn eval(&self, w: &Word) -> Result<NormalForm> {
        let same = std::ptr::eq(w.alphabet().as_ref(), self);
        let mut acc = NormalForm::identity();
        for &l in w.letters() {
            let resolved = if same {
                l
            } else {
                let c = w.alphabet().symbol(l.sym);
                let sym = self.index_of(c).ok_or(Error::UnknownGenerator(c))?;
                Letter::new(sym, l.sign)
            };
            acc = acc.multiply(self.image(resolved));
        }
        Ok(acc)
    }

    /// `true` per relator iff it evaluates to the identity.
    pub fn check_relators(&self, relators: &[Word]) -> Result<Vec<bool>> {
        relators.iter().map(|r| Ok(self.eval(r)?.is_identity())).collect()
    }

    /// Whether every null word over this alphabet has even length.
    ///
    /// Sufficient criterion (exact for these direct products of free
    /// groups): some parity character of the abelianization `Z^4 -> Z/2`
    /// sends every generator image to 1. Such a character is a choice of
    /// parities `(e_a, e_b, e_c, e_d)`; there are only 16, so solve by
    /// exhaustion. The standard alphabet takes `(1,1,1,1)`; the twisted
    /// one takes `(1,1,1,0)`.
    pub fn all_null_words_even(&self) -> bool {
        let masks: Vec<u8> = self.images.iter().map(exponent_parity_mask).collect();
        (0u8..16).any(|eps| masks.iter().all(|&m| (m & eps).count_ones() % 2 == 1))
    }
}

/// Bit i set iff the exponent sum of standard generator i is odd
/// (bits: a, b, c, d). Exponent parity equals letter-count parity.
fn exponent_parity_mask(nf: &NormalForm) -> u8 {
    let mut mask = 0u8;
    for &l in nf.ab().letters() {
        mask ^= 1 << (l.abs() - 1);
    }
    for &l in nf.cd().letters() {
        mask ^= 1 << (l.abs() + 1);
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std() -> Arc<MarkedAlphabet> {
        MarkedAlphabet::standard()
    }

    fn twisted() -> Arc<MarkedAlphabet> {
        MarkedAlphabet::twisted()
    }

    fn w(text: &str, alphabet: &Arc<MarkedAlphabet>) -> Word {
        Word::parse(text, alphabet).unwrap()
    }

    fn ev(text: &str, alphabet: &Arc<MarkedAlphabet>) -> NormalForm {
        alphabet.eval(&w(text, alphabet)).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(ev("aA", &std()).is_identity());
        assert_eq!(ev("t", &twisted()).to_string(), "(B, d)");
        assert!(ev("tcTatCTA", &twisted()).is_identity());
    }

    #[test]
    fn multiply_examples() {
        let g = ev("abc", &std());
        assert_eq!(NormalForm::identity().multiply(&g), g);
        assert!(ev("a", &std()).multiply(&ev("A", &std())).is_identity());
        let left = ev("abc", &std());
        let right = ev("Bc", &std());
        assert_eq!(left.multiply(&right).to_string(), "(a, c2)");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(NormalForm::identity().inverse(), NormalForm::identity());
        assert_eq!(ev("a", &std()).inverse(), ev("A", &std()));
        let g = ev("abcd", &std());
        assert_eq!(g.inverse().to_string(), "(BA, DC)");
        assert!(g.multiply(&g.inverse()).is_identity());
    }

    #[test]
    fn eval_is_a_homomorphism_on_samples() {
        let samples = ["", "a", "tcT", "b2T3a", "AtCbb", "tttTTT"];
        let tw = twisted();
        for x in samples {
            for y in samples {
                let wx = w(x, &tw);
                let wy = w(y, &tw);
                let lhs = tw.eval(&wx.concat(&wy).unwrap()).unwrap();
                let rhs = tw.eval(&wx).unwrap().multiply(&tw.eval(&wy).unwrap());
                assert_eq!(lhs, rhs);
            }
            let wx = w(x, &tw);
            assert_eq!(tw.eval(&wx.inverted()).unwrap(), tw.eval(&wx).unwrap().inverse());
        }
    }

    #[test]
    fn automorphism_examples() {
        let tw = twisted();
        assert_eq!(apply_automorphism(Automorphism::Phi, &w("a", &tw)), w("A", &tw));
        assert_eq!(apply_automorphism(Automorphism::Psi, &w("abt", &tw)), w("abt", &tw));
        let w3 = crate::families::w_n(3);
        let twice = apply_automorphism(Automorphism::Phi, &apply_automorphism(Automorphism::Phi, &w3));
        assert_eq!(twice, w3);
    }

    #[test]
    fn automorphisms_act_on_elements_as_expected() {
        let tw = twisted();
        for text in ["tcTa", "b2at3C", "AcTb"] {
            let word = w(text, &tw);
            let lhs = tw.eval(&apply_automorphism(Automorphism::Phi, &word)).unwrap();
            let base = tw.eval(&word).unwrap();
            let flipped = NormalForm::new(
                FactorWord::from_letters(
                    base.ab().letters().iter().map(|&l| if l.abs() == 1 { -l } else { l }),
                ),
                base.cd().clone(),
            );
            assert_eq!(lhs, flipped);
        }
    }

    #[test]
    fn relator_checks() {
        let tw = twisted();
        let relators: Vec<Word> =
            ["acAC", "atbABT", "bcBC", "btBT"].iter().map(|t| w(t, &tw)).collect();
        assert_eq!(tw.check_relators(&relators).unwrap(), vec![true; 4]);

        let st = std();
        assert_eq!(st.check_relators(&[w("acAC", &st)]).unwrap(), vec![true]);
        assert_eq!(st.check_relators(&[w("ab", &st)]).unwrap(), vec![false]);
    }

    #[test]
    fn custom_alphabets() {
        let custom = MarkedAlphabet::custom_from_spec("t=dB").unwrap();
        assert_eq!(custom.len(), 1);
        let t = custom.eval(&w("t", &custom)).unwrap();
        assert_eq!(t, twisted().eval(&w("t", &twisted())).unwrap());

        assert_eq!(
            MarkedAlphabet::custom_from_spec("e=aA"),
            Err(Error::TrivialImage('e'))
        );
        assert!(MarkedAlphabet::custom_from_spec("T=a").is_err());
    }

    #[test]
    fn cross_alphabet_eval_resolves_by_symbol() {
        let word = w("ab", &twisted());
        assert_eq!(std().eval(&word).unwrap().to_string(), "(ab, 1)");
        let with_t = w("t", &twisted());
        assert_eq!(std().eval(&with_t), Err(Error::UnknownGenerator('t')));
    }

    #[test]
    fn parity_criterion() {
        assert!(MarkedAlphabet::standard().all_null_words_even());
        assert!(MarkedAlphabet::twisted().all_null_words_even());
        // `s = ab` has even total length, and indeed `s a^-1 b^-1` would be
        // an odd-length null word over {s, a, b}.
        let st = std();
        let ab = st.eval(&w("ab", &st)).unwrap();
        let a = st.eval(&w("a", &st)).unwrap();
        let b = st.eval(&w("b", &st)).unwrap();
        let mixed =
            MarkedAlphabet::custom("mixed", vec![('s', ab), ('a', a), ('b', b)]).unwrap();
        assert!(!mixed.all_null_words_even());
    }
}
