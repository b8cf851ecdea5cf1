//! Exact metric computations in the Cayley graph `Cay(G, A)` of
//! `G = F(a,b) x F(c,d)` over a marked alphabet `A`.
//!
//! The graph is implicit: vertices are normal forms, neighbors are right
//! multiplications by generator images. Distances are exact word-metric
//! values computed by bidirectional breadth-first search. Pair queries
//! reduce to identity-to-target queries by left-invariance, so the oracle
//! keeps one persistent forward ball around the identity and grows a fresh
//! backward ball per query; the forward ball amortizes across the
//! all-pairs checks of [`DistanceOracle::is_isometric_cycle`].
//!
//! State growth is roughly `7^r` per radius step, which is why every query
//! is bounded by a configurable meet radius (`radius_cap`, default 8, so
//! distances up to 16 are decidable). Exceeding the cap reports
//! [`Error::RadiusExhausted`] rather than an estimate: answers are exact
//! or absent, never approximate.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::group::{MarkedAlphabet, NormalForm};
use crate::words::{Letter, Sign, Word};
use crate::{Error, Result};

pub const DEFAULT_RADIUS_CAP: usize = 8;
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

#[derive(Debug, Clone, Copy)]
struct Node {
    dist: u32,
    /// Letter whose application connects this node to its BFS parent:
    /// in the forward ball `parent * image(step) = node`, in a backward
    /// ball `node * image(step) = parent`. `None` at the origin.
    step: Option<Letter>,
}

#[derive(Debug)]
struct Ball {
    dist: HashMap<NormalForm, Node>,
    frontier: Vec<NormalForm>,
    radius: usize,
}

impl Ball {
    fn new(origin: NormalForm) -> Ball {
        let mut dist = HashMap::new();
        dist.insert(origin.clone(), Node { dist: 0, step: None });
        Ball { dist, frontier: vec![origin], radius: 0 }
    }

    /// Expands one full level. For every newly inserted node found in
    /// `other`, offers `self_dist + other_dist` to `best` (kept when
    /// strictly smaller; ties keep the earlier meet, which makes witness
    /// reconstruction deterministic). `invert_step` is set for backward
    /// balls so stored steps always point along the reconstruction
    /// direction.
    fn expand(
        &mut self,
        alphabet: &MarkedAlphabet,
        letters: &[Letter],
        invert_step: bool,
        other: Option<&Ball>,
        best: &mut Option<(u32, NormalForm)>,
    ) {
        let next_dist = self.radius as u32 + 1;
        let mut next = Vec::new();
        for g in &self.frontier {
            for &letter in letters {
                let h = g.multiply(alphabet.image(letter));
                if self.dist.contains_key(&h) {
                    continue;
                }
                let step = if invert_step { letter.inverse() } else { letter };
                self.dist.insert(h.clone(), Node { dist: next_dist, step: Some(step) });
                if let Some(other) = other {
                    if let Some(hit) = other.dist.get(&h) {
                        let total = next_dist + hit.dist;
                        if best.as_ref().is_none_or(|(b, _)| total < *b) {
                            *best = Some((total, h.clone()));
                        }
                    }
                }
                next.push(h);
            }
        }
        self.frontier = next;
        self.radius += 1;
    }
}

/// Report of [`DistanceOracle::is_isometric_cycle`]: either every vertex
/// pair of the loop realizes the cyclic distance, or the first violating
/// pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub word: Word,
    pub is_isometric: bool,
    pub violation: Option<CycleViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleViolation {
    pub i: usize,
    pub j: usize,
    pub expected: usize,
    pub actual: usize,
}

/// Row of [`DistanceOracle::ball_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallRow {
    pub r: usize,
    pub sphere: usize,
    pub ball: usize,
}

/// Exact distance oracle for one Cayley graph, with a persistent,
/// lazily grown forward ball around the identity.
///
/// The oracle is a stateful cache: queries grow the forward ball, so it
/// takes `&mut self` and is meant to be driven from a single control
/// context. All returned values are plain data.
#[derive(Debug)]
pub struct DistanceOracle {
    alphabet: Arc<MarkedAlphabet>,
    radius_cap: usize,
    enumeration_cap: usize,
    letters: Vec<Letter>,
    forward: Ball,
}

impl DistanceOracle {
    pub fn new(alphabet: Arc<MarkedAlphabet>) -> DistanceOracle {
        DistanceOracle::with_caps(alphabet, DEFAULT_RADIUS_CAP, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_caps(
        alphabet: Arc<MarkedAlphabet>,
        radius_cap: usize,
        enumeration_cap: usize,
    ) -> DistanceOracle {
        let letters = (0..alphabet.len() as u8)
            .flat_map(|sym| [Letter::new(sym, Sign::Pos), Letter::new(sym, Sign::Neg)])
            .collect();
        DistanceOracle {
            alphabet,
            radius_cap,
            enumeration_cap,
            letters,
            forward: Ball::new(NormalForm::identity()),
        }
    }

    pub fn alphabet(&self) -> &Arc<MarkedAlphabet> {
        &self.alphabet
    }

    pub fn radius_cap(&self) -> usize {
        self.radius_cap
    }

    /// Exact graph distance between two elements.
    pub fn distance(&mut self, g: &NormalForm, h: &NormalForm) -> Result<usize> {
        self.distance_from_identity(&g.inverse().multiply(h))
    }

    /// Exact distance from the identity, by bidirectional search.
    pub fn distance_from_identity(&mut self, target: &NormalForm) -> Result<usize> {
        if target.is_identity() {
            return Ok(0);
        }
        let (dist, _, _) = self.bidirectional(target)?;
        Ok(dist as usize)
    }

    /// A word `v` over the alphabet with `eval(v) = g` and
    /// `|v| = distance(identity, g)`, reconstructed by backtracking parent
    /// pointers through the meet point. BFS expands generators in
    /// declaration order, positive before negative, so a fixed query
    /// sequence on a fresh oracle reproduces identical witnesses; the
    /// spelling may differ across growth histories (the meet point moves),
    /// never the length.
    pub fn geodesic_witness(&mut self, g: &NormalForm) -> Result<Word> {
        if g.is_identity() {
            return Ok(Word::empty(Arc::clone(&self.alphabet)));
        }
        let (_, meet, backward) = self.bidirectional(g)?;

        let mut first = Vec::new();
        let mut cur = meet.clone();
        while let Some(step) = self.forward.dist[&cur].step {
            first.push(step);
            cur = cur.multiply(self.alphabet.image(step.inverse()));
        }
        first.reverse();

        let mut cur = meet;
        while let Some(step) = backward.dist[&cur].step {
            first.push(step);
            cur = cur.multiply(self.alphabet.image(step));
        }
        Word::from_letters(first, Arc::clone(&self.alphabet))
    }

    /// True iff the word's length equals the distance of the element it
    /// represents.
    pub fn is_geodesic(&mut self, w: &Word) -> Result<bool> {
        let target = self.alphabet.eval(w)?;
        Ok(self.distance_from_identity(&target)? == w.len())
    }

    /// Checks that the loop traced by a null word `w` is an isometrically
    /// embedded cycle: with `g_i` the prefix evaluations, every pair must
    /// satisfy `d(g_i, g_j) = min(j - i, |w| - (j - i))`. A repeated
    /// vertex gives distance 0 below the expectation, so distinctness is
    /// implied. The first violating pair (lexicographic in `(i, j)`) is
    /// reported.
    pub fn is_isometric_cycle(&mut self, w: &Word) -> Result<CycleReport> {
        if w.is_empty() || !self.alphabet.eval(w)?.is_identity() {
            return Err(Error::NotNull);
        }
        let n = w.len();
        let mut prefixes = Vec::with_capacity(n);
        let mut acc = NormalForm::identity();
        for &l in w.letters() {
            prefixes.push(acc.clone());
            acc = acc.multiply(self.alphabet.image(resolve(&self.alphabet, w, l)?));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let expected = (j - i).min(n - (j - i));
                let actual = self.distance(&prefixes[i], &prefixes[j])?;
                if actual != expected {
                    return Ok(CycleReport {
                        word: w.clone(),
                        is_isometric: false,
                        violation: Some(CycleViolation { i, j, expected, actual }),
                    });
                }
            }
        }
        Ok(CycleReport { word: w.clone(), is_isometric: true, violation: None })
    }

    /// Exact sphere and cumulative ball sizes for `r = 0..=radius`.
    pub fn ball_profile(&mut self, radius: usize) -> Result<Vec<BallRow>> {
        if radius > self.radius_cap {
            return Err(Error::CapExceeded { requested: radius, cap: self.radius_cap });
        }
        self.grow_forward(radius);
        let mut spheres = vec![0usize; radius + 1];
        for node in self.forward.dist.values() {
            let d = node.dist as usize;
            if d <= radius {
                spheres[d] += 1;
            }
        }
        let mut ball = 0;
        Ok(spheres
            .into_iter()
            .enumerate()
            .map(|(r, sphere)| {
                ball += sphere;
                BallRow { r, sphere, ball }
            })
            .collect())
    }

    /// One canonical representative (lexicographically least over all
    /// rotations and inversion-with-rotations) of every isometrically
    /// embedded cycle through the identity of length `3..=max_length`,
    /// sorted by length then lexicographically.
    ///
    /// Length-2 out-and-back walks are excluded: they satisfy the pair
    /// condition vacuously but traverse a single edge twice rather than
    /// embedding a circle.
    ///
    /// Search is depth-first over words. A prefix survives only if every
    /// vertex pair it has realized so far already matches the cyclic
    /// distance for the target length, which subsumes both geodesic
    /// pruning of short prefixes and early pair-violation pruning. When
    /// the alphabet admits a parity character making every null word even
    /// (checked, not assumed), odd target lengths are skipped.
    pub fn enumerate_isometric_cycles(&mut self, max_length: usize) -> Result<Vec<Word>> {
        if max_length > self.enumeration_cap {
            return Err(Error::CapExceeded { requested: max_length, cap: self.enumeration_cap });
        }
        let even_only = self.alphabet.all_null_words_even();
        let mut found: BTreeSet<(usize, Vec<Letter>)> = BTreeSet::new();
        for target_len in 3..=max_length {
            if even_only && target_len % 2 == 1 {
                continue;
            }
            let needed = target_len / 2;
            if needed > self.radius_cap {
                return Err(Error::RadiusExhausted(self.radius_cap));
            }
            self.grow_forward(needed);
            let mut prefix_letters = Vec::with_capacity(target_len);
            let mut prefix_inverses = vec![NormalForm::identity()];
            let mut current = NormalForm::identity();
            dfs_cycles(
                &self.alphabet,
                &self.letters,
                &self.forward.dist,
                target_len,
                &mut prefix_letters,
                &mut prefix_inverses,
                &mut current,
                &mut found,
            );
        }
        found
            .into_iter()
            .map(|(_, letters)| Word::from_letters(letters, Arc::clone(&self.alphabet)))
            .collect()
    }

    fn grow_forward(&mut self, radius: usize) {
        while self.forward.radius < radius {
            self.forward.expand(&self.alphabet, &self.letters, false, None, &mut None);
        }
    }

    /// Core bidirectional query. Returns `(distance, meet point, backward
    /// ball)`. Grows whichever side currently has the smaller radius
    /// (forward on ties, since it is the shared cache); stops as soon as
    /// the two radii certify the best meet seen so far.
    fn bidirectional(&mut self, target: &NormalForm) -> Result<(u32, NormalForm, Ball)> {
        let mut backward = Ball::new(target.clone());
        let mut best: Option<(u32, NormalForm)> = None;
        if let Some(node) = self.forward.dist.get(target) {
            best = Some((node.dist, target.clone()));
        }
        loop {
            if let Some((b, _)) = best {
                if self.forward.radius + backward.radius >= b as usize {
                    let (dist, meet) = best.unwrap();
                    return Ok((dist, meet, backward));
                }
            }
            let forward_can = self.forward.radius < self.radius_cap;
            let backward_can = backward.radius < self.radius_cap;
            let expand_forward = if forward_can && backward_can {
                self.forward.radius <= backward.radius
            } else if forward_can {
                true
            } else if backward_can {
                false
            } else {
                return Err(Error::RadiusExhausted(self.radius_cap));
            };
            if expand_forward {
                self.forward.expand(
                    &self.alphabet,
                    &self.letters,
                    false,
                    Some(&backward),
                    &mut best,
                );
            } else {
                backward.expand(
                    &self.alphabet,
                    &self.letters,
                    true,
                    Some(&self.forward),
                    &mut best,
                );
            }
        }
    }
}

/// Resolves a letter of `w` against `alphabet` (they may differ).
fn resolve(alphabet: &MarkedAlphabet, w: &Word, l: Letter) -> Result<Letter> {
    if std::ptr::eq(w.alphabet().as_ref(), alphabet) {
        return Ok(l);
    }
    let c = w.alphabet().symbol(l.sym);
    let sym = alphabet.index_of(c).ok_or(Error::UnknownGenerator(c))?;
    Ok(Letter::new(sym, l.sign))
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycles(
    alphabet: &MarkedAlphabet,
    letters: &[Letter],
    ball: &HashMap<NormalForm, Node>,
    target_len: usize,
    prefix_letters: &mut Vec<Letter>,
    prefix_inverses: &mut Vec<NormalForm>,
    current: &mut NormalForm,
    found: &mut BTreeSet<(usize, Vec<Letter>)>,
) {
    let depth = prefix_letters.len();
    for &letter in letters {
        let next = current.multiply(alphabet.image(letter));
        if depth + 1 == target_len {
            if next.is_identity() {
                let mut cycle = prefix_letters.clone();
                cycle.push(letter);
                found.insert((target_len, canonical_letters(&cycle)));
            }
            continue;
        }
        // Every earlier vertex must already sit at the exact cyclic
        // distance for the target length. The separation here is at most
        // floor(target_len / 2), so absence from the ball means too far.
        let ok = (0..depth).all(|j| {
            let sep = depth + 1 - j;
            let expected = sep.min(target_len - sep);
            match ball.get(&prefix_inverses[j].multiply(&next)) {
                Some(node) => node.dist as usize == expected,
                None => false,
            }
        });
        if !ok {
            continue;
        }
        prefix_letters.push(letter);
        prefix_inverses.push(next.inverse());
        let mut saved = std::mem::replace(current, next);
        dfs_cycles(
            alphabet,
            letters,
            ball,
            target_len,
            prefix_letters,
            prefix_inverses,
            current,
            found,
        );
        std::mem::swap(current, &mut saved);
        prefix_letters.pop();
        prefix_inverses.pop();
    }
}

/// Lexicographically least word over the dihedral orbit of a cycle word:
/// all rotations of the word and of its formal inverse. Letter order is
/// declaration order of symbols, positive before negative.
pub fn canonical_cycle_form(w: &Word) -> Word {
    Word::from_letters(canonical_letters(w.letters()), Arc::clone(w.alphabet()))
        .expect("letters come from the same alphabet")
}

fn canonical_letters(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let inverted: Vec<Letter> = letters.iter().rev().map(|l| l.inverse()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for source in [letters, inverted.as_slice()] {
        for r in 0..n {
            let candidate: Vec<Letter> = (0..n).map(|j| source[(r + j) % n]).collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

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

    /// Independent reference: plain unidirectional BFS out to `radius`.
    fn reference_ball(alphabet: &Arc<MarkedAlphabet>, radius: usize) -> HashMap<NormalForm, usize> {
        let letters: Vec<Letter> = (0..alphabet.len() as u8)
            .flat_map(|s| [Letter::new(s, Sign::Pos), Letter::new(s, Sign::Neg)])
            .collect();
        let mut dist = HashMap::new();
        dist.insert(NormalForm::identity(), 0usize);
        let mut frontier = vec![NormalForm::identity()];
        for r in 1..=radius {
            let mut next = Vec::new();
            for g in &frontier {
                for &l in &letters {
                    let h = g.multiply(alphabet.image(l));
                    if !dist.contains_key(&h) {
                        dist.insert(h.clone(), r);
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    #[test]
    fn distance_examples() {
        let mut oracle = DistanceOracle::new(std());
        let id = NormalForm::identity();
        assert_eq!(oracle.distance(&id, &id).unwrap(), 0);
        assert_eq!(oracle.distance(&id, &ev("dB", &std())).unwrap(), 2);

        let mut tw = DistanceOracle::new(twisted());
        assert_eq!(tw.distance(&id, &ev("b3t2", &twisted())).unwrap(), 5);
    }

    #[test]
    fn distance_agrees_with_reference_bfs() {
        for alphabet in [std(), twisted()] {
            let reference = reference_ball(&alphabet, 4);
            let mut oracle = DistanceOracle::new(Arc::clone(&alphabet));
            for (g, &d) in &reference {
                assert_eq!(
                    oracle.distance_from_identity(g).unwrap(),
                    d,
                    "alphabet {} element {g}",
                    alphabet.name()
                );
            }
        }
    }

    #[test]
    fn radius_cap_is_an_error_not_an_estimate() {
        let mut oracle = DistanceOracle::with_caps(std(), 1, 16);
        assert_eq!(
            oracle.distance_from_identity(&ev("a2b2c2", &std())),
            Err(Error::RadiusExhausted(1))
        );
        // Still exact within reach.
        assert_eq!(oracle.distance_from_identity(&ev("ab", &std())).unwrap(), 2);
    }

    #[test]
    fn geodesic_witness_examples() {
        let mut oracle = DistanceOracle::new(std());
        assert_eq!(oracle.geodesic_witness(&NormalForm::identity()).unwrap(), Word::empty(std()));
        assert_eq!(oracle.geodesic_witness(&ev("a", &std())).unwrap(), w("a", &std()));

        let g = ev("aBCd", &std());
        let witness = oracle.geodesic_witness(&g).unwrap();
        assert_eq!(witness.len(), 4);
        assert_eq!(std().eval(&witness).unwrap(), g);
    }

    #[test]
    fn geodesic_witnesses_for_u_family_words() {
        // Geodesics for u_k use a and c exactly once each, never their
        // inverses (checked on the witness the oracle finds).
        let mut oracle = DistanceOracle::new(twisted());
        for n in 0..=3usize {
            for k in 0..=n {
                let u = crate::families::u_family(&crate::families::FamilySpec::plain(n, k))
                    .unwrap();
                let g = twisted().eval(&u).unwrap();
                let witness = oracle.geodesic_witness(&g).unwrap();
                assert_eq!(witness.len(), 2 * n + 2, "n = {n}, k = {k}");
                let count = |sym: char, sign: Sign| {
                    witness
                        .letters()
                        .iter()
                        .filter(|l| twisted().symbol(l.sym) == sym && l.sign == sign)
                        .count()
                };
                assert_eq!(count('a', Sign::Pos), 1, "n = {n}, k = {k}");
                assert_eq!(count('c', Sign::Pos), 1, "n = {n}, k = {k}");
                assert_eq!(count('a', Sign::Neg), 0, "n = {n}, k = {k}");
                assert_eq!(count('c', Sign::Neg), 0, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn is_geodesic_examples() {
        let mut oracle = DistanceOracle::new(std());
        assert!(!oracle.is_geodesic(&w("aA", &std())).unwrap());
        assert!(oracle.is_geodesic(&w("ab", &std())).unwrap());

        let mut tw = DistanceOracle::new(twisted());
        for n in 0..=2usize {
            for k in 0..=n {
                let u = crate::families::u_family(&crate::families::FamilySpec::plain(n, k))
                    .unwrap();
                assert!(tw.is_geodesic(&u).unwrap(), "u_{k} at n = {n}");
            }
        }
    }

    #[test]
    fn isometric_cycle_examples() {
        let mut oracle = DistanceOracle::new(std());
        let report = oracle.is_isometric_cycle(&w("acAC", &std())).unwrap();
        assert!(report.is_isometric);

        let report = oracle.is_isometric_cycle(&w("aAcC", &std())).unwrap();
        assert!(!report.is_isometric);
        assert_eq!(
            report.violation,
            Some(CycleViolation { i: 0, j: 2, expected: 2, actual: 0 })
        );

        assert_eq!(oracle.is_isometric_cycle(&w("ab", &std())), Err(Error::NotNull));

        let mut tw = DistanceOracle::new(twisted());
        let w2 = crate::families::w_n(2);
        assert!(tw.is_isometric_cycle(&w2).unwrap().is_isometric);
    }

    #[test]
    fn ball_profile_examples() {
        let mut oracle = DistanceOracle::new(std());
        let rows = oracle.ball_profile(2).unwrap();
        assert_eq!(rows[0], BallRow { r: 0, sphere: 1, ball: 1 });
        assert_eq!(rows[1], BallRow { r: 1, sphere: 8, ball: 9 });
        assert_eq!(rows[2], BallRow { r: 2, sphere: 40, ball: 49 });

        let mut tw = DistanceOracle::new(twisted());
        assert_eq!(tw.ball_profile(1).unwrap()[1].sphere, 8);

        assert_eq!(
            oracle.ball_profile(99),
            Err(Error::CapExceeded { requested: 99, cap: DEFAULT_RADIUS_CAP })
        );
    }

    /// Sphere sizes of the standard alphabet come from convolving the
    /// free-group sphere sizes 1, 4, 12, 36, ...
    #[test]
    fn std_spheres_match_convolution() {
        let f2_sphere = |i: usize| -> usize {
            match i {
                0 => 1,
                _ => 4 * 3usize.pow(i as u32 - 1),
            }
        };
        let mut oracle = DistanceOracle::new(std());
        let rows = oracle.ball_profile(5).unwrap();
        for row in &rows {
            let expected: usize = (0..=row.r).map(|i| f2_sphere(i) * f2_sphere(row.r - i)).sum();
            assert_eq!(row.sphere, expected, "sphere at r = {}", row.r);
        }
    }

    #[test]
    fn enumeration_small_horizons() {
        let mut oracle = DistanceOracle::new(std());
        assert!(oracle.enumerate_isometric_cycles(3).unwrap().is_empty());

        let cycles = oracle.enumerate_isometric_cycles(8).unwrap();
        assert!(!cycles.is_empty());
        assert!(cycles.iter().all(|c| c.len() == 4));
        let texts: Vec<String> = cycles.iter().map(|c| c.format()).collect();
        assert_eq!(texts, vec!["acAC", "adAD", "bcBC", "bdBD"]);

        let mut tw = DistanceOracle::new(twisted());
        let cycles = tw.enumerate_isometric_cycles(8).unwrap();
        let w1 = canonical_cycle_form(&crate::families::w_n(1));
        assert!(cycles.contains(&w1), "expected {} among twisted cycles", w1.format());

        assert_eq!(
            tw.enumerate_isometric_cycles(99),
            Err(Error::CapExceeded { requested: 99, cap: DEFAULT_ENUMERATION_CAP })
        );
    }

    #[test]
    fn twisted_cycles_keep_growing() {
        // Unlike std, the twisted alphabet does not stop at length 4:
        // squares, relator hexagons, then the commutator family at
        // lengths 8, 12, ... (length 10 is empty; the family steps by 4).
        let mut oracle = DistanceOracle::new(twisted());
        let cycles = oracle.enumerate_isometric_cycles(12).unwrap();
        let lengths: std::collections::BTreeSet<usize> = cycles.iter().map(Word::len).collect();
        assert_eq!(lengths.into_iter().collect::<Vec<_>>(), vec![4, 6, 8, 12]);
        let w2 = canonical_cycle_form(&crate::families::w_n(2));
        assert!(cycles.contains(&w2), "expected {} at length 12", w2.format());
    }

    #[test]
    fn enumeration_without_parity_finds_odd_cycles() {
        // {s, a, b} with s = ab admits no parity character (s has even
        // length), and indeed s b^-1 a^-1 traces an isometric triangle.
        let st = std();
        let image = |text: &str| st.eval(&w(text, &st)).unwrap();
        let mixed = MarkedAlphabet::custom(
            "mixed",
            vec![('s', image("ab")), ('a', image("a")), ('b', image("b"))],
        )
        .unwrap();
        assert!(!mixed.all_null_words_even());

        let mut oracle = DistanceOracle::new(Arc::clone(&mixed));
        let cycles = oracle.enumerate_isometric_cycles(3).unwrap();
        let triangle = canonical_cycle_form(&w("sBA", &mixed));
        assert_eq!(cycles, vec![triangle]);
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let word = w("tcTatCTA", &twisted());
        let canon = canonical_cycle_form(&word);
        assert_eq!(canon.format(), "atcTAtCT");
        for r in 0..word.len() {
            let rotated = word.cyclic_conjugate(r).unwrap();
            assert_eq!(canonical_cycle_form(&rotated), canon);
            assert_eq!(canonical_cycle_form(&rotated.inverted()), canon);
        }
    }

    #[test]
    fn witnesses_are_reproducible_and_valid() {
        // The same query sequence on a fresh oracle reconstructs the
        // same witnesses. A differently grown oracle may pick another
        // meet point and hence another geodesic spelling, but it must
        // still be a geodesic for the same element.
        let queries = ["b3t2", "tcTa", "At2C", "c2T3"];
        let mut first = DistanceOracle::new(twisted());
        let mut second = DistanceOracle::new(twisted());
        let mut warmed = DistanceOracle::new(twisted());
        warmed.ball_profile(4).unwrap();
        for text in queries {
            let g = ev(text, &twisted());
            let witness = first.geodesic_witness(&g).unwrap();
            assert_eq!(witness, second.geodesic_witness(&g).unwrap(), "witness for {text}");

            let other = warmed.geodesic_witness(&g).unwrap();
            assert_eq!(other.len(), witness.len(), "both are geodesics for {text}");
            assert_eq!(twisted().eval(&other).unwrap(), g);
        }
    }

    #[test]
    fn metric_axioms_on_samples() {
        let mut oracle = DistanceOracle::new(twisted());
        let samples = ["", "a", "bt", "tcT", "b2a", "AtC"];
        let elems: Vec<NormalForm> = samples.iter().map(|t| ev(t, &twisted())).collect();
        for g in &elems {
            for h in &elems {
                let d_gh = oracle.distance(g, h).unwrap();
                let d_hg = oracle.distance(h, g).unwrap();
                assert_eq!(d_gh, d_hg, "symmetry");
                for k in &elems {
                    let via = oracle.distance(g, k).unwrap() + oracle.distance(k, h).unwrap();
                    assert!(d_gh <= via, "triangle inequality");
                }
            }
        }
    }
}
