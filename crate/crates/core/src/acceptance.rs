//! The acceptance suite: ten structured checks covering both directions
//! of the contrast this crate demonstrates, runnable from `cargo test`
//! (the `acceptance` integration test) and from `scl verify acceptance`.
//!
//! `Full` runs every check at its documented scale; `Quick` trims sample
//! counts and ranges to finish in well under a minute. Results are
//! deterministic given the seed.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{canonical_cycle_form, DistanceOracle};
use crate::families::{self, FamilySpec, FamilyVariant};
use crate::group::{apply_automorphism, Automorphism, FactorWord, MarkedAlphabet, NormalForm};
use crate::shortcut_free::split_null_word;
use crate::shortcut_product::{shortcut, verify_certificate};
use crate::words::{random_null_word, Letter, Sign, Word};

pub const DEFAULT_SEED: u64 = 20260809;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

struct Params {
    split_samples: usize,
    split_half_lengths: usize,
    sharpness_max_m: usize,
    cert_samples: usize,
    cert_length_steps: usize,
    geodesic_max_n: usize,
    cycle_max_n: usize,
    cycle_stretch: bool,
    z2_bound: usize,
    enum_std_len: usize,
    enum_twisted_len: usize,
    brute_force_len: usize,
    l1_samples: usize,
    crosscheck_radius: usize,
    automorphism_samples: usize,
}

impl Params {
    fn for_level(level: Level) -> Params {
        match level {
            Level::Full => Params {
                split_samples: 1000,
                split_half_lengths: 200,
                sharpness_max_m: 3,
                cert_samples: 1000,
                cert_length_steps: 109,
                geodesic_max_n: 5,
                cycle_max_n: 4,
                cycle_stretch: true,
                z2_bound: 4,
                enum_std_len: 12,
                enum_twisted_len: 8,
                brute_force_len: 6,
                l1_samples: 1000,
                crosscheck_radius: 6,
                automorphism_samples: 200,
            },
            Level::Quick => Params {
                split_samples: 150,
                split_half_lengths: 60,
                sharpness_max_m: 2,
                cert_samples: 150,
                cert_length_steps: 49,
                geodesic_max_n: 3,
                cycle_max_n: 2,
                cycle_stretch: false,
                z2_bound: 3,
                enum_std_len: 8,
                enum_twisted_len: 8,
                brute_force_len: 4,
                l1_samples: 200,
                crosscheck_radius: 4,
                automorphism_samples: 50,
            },
        }
    }
}

/// Runs every criterion, streaming results to `sink`; returns whether all
/// passed.
pub fn run_with(level: Level, seed: u64, sink: &mut dyn FnMut(&CriterionResult)) -> bool {
    let p = Params::for_level(level);
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Result<String, String> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("presentation relators evaluate to the identity", Box::new(relators_hold)),
        ("w_n is null for n = 0..10 by both evaluation routes", Box::new(null_family)),
        (
            "free-factor splits meet floor(|u|/3), and the bound is sharp",
            Box::new(|| free_factor_splits(&p, seed)),
        ),
        (
            "product certificates verify with loop and ratio bounds",
            Box::new(|| product_shortcut(&p, seed)),
        ),
        ("u-family words are geodesic for every variant", Box::new(|| geodesic_family(&p))),
        ("w_n defines an isometrically embedded cycle", Box::new(|| isometric_cycles(&p))),
        ("<b,t> is an isometrically embedded Z^2", Box::new(|| z2_embedding(&p))),
        (
            "enumeration: std stops at length 4, twisted reaches w_1",
            Box::new(|| enumeration_contrast(&p)),
        ),
        ("metric sanity: l1 form, BFS cross-check, automorphisms", Box::new(|| metric_sanity(&p, seed))),
        ("family word identities hold for n = 0..10", Box::new(claim_identities)),
    ];

    let mut all_passed = true;
    for (index, (name, body)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = body();
        let seconds = start.elapsed().as_secs_f64();
        let (passed, detail) = match outcome {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        all_passed &= passed;
        sink(&CriterionResult { index: index + 1, name, passed, detail, seconds });
    }
    all_passed
}

/// Convenience wrapper collecting results.
pub fn run(level: Level, seed: u64) -> (bool, Vec<CriterionResult>) {
    let mut results = Vec::new();
    let ok = run_with(level, seed, &mut |r| results.push(r.clone()));
    (ok, results)
}

fn err_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

// Criterion 1.
fn relators_hold() -> Result<String, String> {
    let twisted = MarkedAlphabet::twisted();
    let relators: Vec<Word> = ["acAC", "atbABT", "bcBC", "btBT"]
        .iter()
        .map(|t| Word::parse(t, &twisted).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let results = twisted.check_relators(&relators).map_err(|e| e.to_string())?;
    for (relator, ok) in relators.iter().zip(&results) {
        err_if(!ok, || format!("relator {} is not null", relator.format()))?;
    }
    Ok("4 relators null under twisted".into())
}

/// Rewrites a word over the twisted alphabet into standard letters by
/// expanding `t` to `dB` and `t^-1` to `bD`.
fn twisted_in_std_letters(w: &Word) -> Word {
    let std = MarkedAlphabet::standard();
    let letter = |c: char, sign: Sign| Letter::new(std.index_of(c).expect("std symbol"), sign);
    let mut letters = Vec::with_capacity(2 * w.len());
    for &l in w.letters() {
        match (w.alphabet().symbol(l.sym), l.sign) {
            ('t', Sign::Pos) => {
                letters.push(letter('d', Sign::Pos));
                letters.push(letter('b', Sign::Neg));
            }
            ('t', Sign::Neg) => {
                letters.push(letter('b', Sign::Pos));
                letters.push(letter('d', Sign::Neg));
            }
            (c, sign) => letters.push(letter(c, sign)),
        }
    }
    Word::from_letters(letters, std).expect("std letters")
}

fn power_text(sym: char, exponent: i64) -> String {
    if exponent == 0 {
        return String::new();
    }
    let c = if exponent > 0 { sym } else { sym.to_ascii_uppercase() };
    match exponent.unsigned_abs() {
        1 => c.to_string(),
        n => format!("{c}{n}"),
    }
}

// Criterion 2.
fn null_family() -> Result<String, String> {
    let twisted = MarkedAlphabet::twisted();
    let std = MarkedAlphabet::standard();
    for n in 0..=10usize {
        let wn = families::w_n(n);
        let direct = twisted.eval(&wn).map_err(|e| e.to_string())?;
        err_if(!direct.is_identity(), || format!("w_{n} not null under twisted"))?;

        let expanded = twisted_in_std_letters(&wn);
        let via_std = std.eval(&expanded).map_err(|e| e.to_string())?;
        err_if(!via_std.is_identity(), || format!("w_{n} not null after expanding t = dB"))?;

        // t^n c t^-n must equal d^n c d^-n, the conjugate that commutes
        // with a.
        let lhs_text = format!("{}c{}", power_text('t', n as i64), power_text('t', -(n as i64)));
        let lhs = twisted_in_std_letters(
            &Word::parse(&lhs_text, &twisted).map_err(|e| e.to_string())?,
        );
        let rhs_text = format!("{}c{}", power_text('d', n as i64), power_text('d', -(n as i64)));
        let rhs = Word::parse(&rhs_text, &std).map_err(|e| e.to_string())?;
        let same = std.eval(&lhs).map_err(|e| e.to_string())?
            == std.eval(&rhs).map_err(|e| e.to_string())?;
        err_if(!same, || format!("conjugation identity fails at n = {n}"))?;
    }
    Ok("w_0..w_10 null via both routes".into())
}

fn is_null_free(word: &Word) -> bool {
    word.free_reduce().is_empty()
}

/// Best achievable `min(|u1|, |u2|)` over all rotations and split points
/// of `u` with both parts null; independent of the centroid machinery.
fn brute_force_best_split(u: &Word) -> usize {
    let n = u.len();
    let mut best = 0;
    for r in 0..n {
        let rotated = u.cyclic_conjugate(r).expect("in range");
        for s in 0..=n {
            let first =
                Word::from_letters(rotated.letters()[..s].to_vec(), Arc::clone(u.alphabet()))
                    .expect("valid letters");
            let second =
                Word::from_letters(rotated.letters()[s..].to_vec(), Arc::clone(u.alphabet()))
                    .expect("valid letters");
            if is_null_free(&first) && is_null_free(&second) {
                best = best.max(s.min(n - s));
            }
        }
    }
    best
}

// Criterion 3.
fn free_factor_splits(p: &Params, seed: u64) -> Result<String, String> {
    let std = MarkedAlphabet::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    for i in 0..p.split_samples {
        let len = 2 * rng.gen_range(1..=p.split_half_lengths);
        let u = random_null_word(len, 1.0, rng.gen()).map_err(|e| e.to_string())?;
        let split = split_null_word(&u).map_err(|e| e.to_string())?;
        let rotated = u.cyclic_conjugate(split.rotation).map_err(|e| e.to_string())?;
        let joined = split.first.concat(&split.second).map_err(|e| e.to_string())?;
        err_if(rotated != joined, || format!("sample {i}: rotation arithmetic broken"))?;
        err_if(
            !std.eval(&split.first).map_err(|e| e.to_string())?.is_identity()
                || !std.eval(&split.second).map_err(|e| e.to_string())?.is_identity(),
            || format!("sample {i}: a split part is not null"),
        )?;
        err_if(split.min_len() < len / 3, || {
            format!("sample {i}: min part {} below floor({len}/3)", split.min_len())
        })?;
    }

    for m in 1..=p.sharpness_max_m {
        let text = format!("a{m}A{}a{m}b{m}B{m}", 2 * m);
        let u = Word::parse(&text, &std).map_err(|e| e.to_string())?;
        let split = split_null_word(&u).map_err(|e| e.to_string())?;
        err_if(split.min_len() < 2 * m, || {
            format!("sharpness word m = {m}: split min {} below 2m", split.min_len())
        })?;
        let optimum = brute_force_best_split(&u);
        err_if(optimum != 2 * m, || {
            format!("sharpness word m = {m}: brute-force optimum {optimum} != 2m")
        })?;
    }
    Ok(format!(
        "{} splits ok (lengths 2..{}); optimum exactly 2m for m <= {}",
        p.split_samples,
        2 * p.split_half_lengths,
        p.sharpness_max_m
    ))
}

// Criterion 4.
fn product_shortcut(p: &Params, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let mut ratio_checked = 0usize;
    for i in 0..p.cert_samples {
        let len = 24 + 2 * rng.gen_range(0..p.cert_length_steps);
        let w = random_null_word(len, 0.5, rng.gen()).map_err(|e| e.to_string())?;
        let cert = shortcut(&w).map_err(|e| e.to_string())?;
        verify_certificate(&w, &cert)
            .map_err(|v| format!("sample {i} (|w| = {len}): certificate invalid: {v}"))?;
        let bound = len - len / 6;
        err_if(cert.loop1_length > bound || cert.loop2_length > bound, || {
            format!(
                "sample {i}: loops ({}, {}) exceed {bound}",
                cert.loop1_length, cert.loop2_length
            )
        })?;
        if len >= 42 {
            ratio_checked += 1;
            let ratio_ok = 7 * cert.w1.len() >= len
                && cert.w1.len() <= cert.w2.len()
                && 7 * cert.mu.len() <= 6 * cert.w1.len();
            err_if(!ratio_ok, || format!("sample {i}: 6/7 ratio form fails at |w| = {len}"))?;
        }
    }
    Ok(format!(
        "{} certificates verified; ratio form checked on {} words with |w| >= 42",
        p.cert_samples, ratio_checked
    ))
}

// Criterion 5.
fn geodesic_family(p: &Params) -> Result<String, String> {
    let mut oracle = DistanceOracle::new(MarkedAlphabet::twisted());
    let variants = [
        FamilyVariant::Plain,
        FamilyVariant::Prime,
        FamilyVariant::DoublePrime,
        FamilyVariant::TriplePrime,
    ];
    let mut checked = 0usize;
    for n in 0..=p.geodesic_max_n {
        for k in 0..=n {
            for variant in variants {
                let u = families::u_family(&FamilySpec::new(n, k, variant))
                    .map_err(|e| e.to_string())?;
                err_if(u.len() != 2 * n + 2, || {
                    format!("family word at n = {n}, k = {k} has wrong length")
                })?;
                let geodesic = oracle.is_geodesic(&u).map_err(|e| e.to_string())?;
                err_if(!geodesic, || {
                    format!("{} (n = {n}, k = {k}, {variant:?}) is not geodesic", u.format())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} family words geodesic up to n = {}", p.geodesic_max_n))
}

// Criterion 6.
fn isometric_cycles(p: &Params) -> Result<String, String> {
    let mut oracle = DistanceOracle::new(MarkedAlphabet::twisted());
    for n in 0..=p.cycle_max_n {
        let wn = families::w_n(n);
        let report = oracle.is_isometric_cycle(&wn).map_err(|e| e.to_string())?;
        err_if(!report.is_isometric, || {
            format!("w_{n} is not isometric: {:?}", report.violation)
        })?;
    }
    // Stretch instances: reported for information, never gating.
    let mut stretch = String::new();
    if p.cycle_stretch {
        for n in [5usize, 6] {
            let outcome = match oracle.is_isometric_cycle(&families::w_n(n)) {
                Ok(report) if report.is_isometric => "isometric".to_string(),
                Ok(report) => format!("violated at {:?}", report.violation),
                Err(e) => e.to_string(),
            };
            stretch.push_str(&format!("; stretch w_{n}: {outcome}"));
        }
    }
    Ok(format!("w_0..w_{} isometrically embedded{stretch}", p.cycle_max_n))
}

// Criterion 7.
fn z2_embedding(p: &Params) -> Result<String, String> {
    let mut oracle = DistanceOracle::new(MarkedAlphabet::twisted());
    let rows = families::z2_distance_table(p.z2_bound, &mut oracle).map_err(|e| e.to_string())?;
    for row in &rows {
        err_if(!row.ok(), || {
            format!(
                "b^{} t^{}: expected {}, got {}",
                row.m, row.l, row.expected, row.actual
            )
        })?;
    }
    Ok(format!("{} entries match |m| + |l| (bound {})", rows.len(), p.z2_bound))
}

/// Unidirectional BFS out to `radius`, in discovery order. The reference
/// route the oracle is checked against; kept deliberately plain.
fn reference_levels(
    alphabet: &Arc<MarkedAlphabet>,
    radius: usize,
) -> Vec<(NormalForm, usize)> {
    let letters: Vec<Letter> = (0..alphabet.len() as u8)
        .flat_map(|s| [Letter::new(s, Sign::Pos), Letter::new(s, Sign::Neg)])
        .collect();
    let mut seen: HashMap<NormalForm, usize> = HashMap::new();
    let mut order: Vec<(NormalForm, usize)> = Vec::new();
    seen.insert(NormalForm::identity(), 0);
    order.push((NormalForm::identity(), 0));
    let mut frontier = vec![NormalForm::identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for g in &frontier {
            for &l in &letters {
                let h = g.multiply(alphabet.image(l));
                if !seen.contains_key(&h) {
                    seen.insert(h.clone(), r);
                    order.push((h.clone(), r));
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    order
}

/// Exhaustive isometric-cycle search with no pruning beyond the length
/// horizon; distances come from the reference BFS table, not the oracle.
fn brute_force_cycles(
    alphabet: &Arc<MarkedAlphabet>,
    max_len: usize,
) -> BTreeSet<(usize, Vec<Letter>)> {
    let table: HashMap<NormalForm, usize> =
        reference_levels(alphabet, max_len / 2).into_iter().collect();
    let letters: Vec<Letter> = (0..alphabet.len() as u8)
        .flat_map(|s| [Letter::new(s, Sign::Pos), Letter::new(s, Sign::Neg)])
        .collect();
    let mut out = BTreeSet::new();
    for len in 3..=max_len {
        let total = letters.len().pow(len as u32);
        for code in 0..total {
            let mut digits = Vec::with_capacity(len);
            let mut rest = code;
            for _ in 0..len {
                digits.push(letters[rest % letters.len()]);
                rest /= letters.len();
            }
            let mut prefixes = Vec::with_capacity(len + 1);
            let mut acc = NormalForm::identity();
            prefixes.push(acc.clone());
            for &l in &digits {
                acc = acc.multiply(alphabet.image(l));
                prefixes.push(acc.clone());
            }
            if !prefixes[len].is_identity() {
                continue;
            }
            let isometric = (0..len).all(|i| {
                ((i + 1)..len).all(|j| {
                    let expected = (j - i).min(len - (j - i));
                    let diff = prefixes[i].inverse().multiply(&prefixes[j]);
                    table.get(&diff) == Some(&expected)
                })
            });
            if isometric {
                let word = Word::from_letters(digits, Arc::clone(alphabet))
                    .expect("letters from this alphabet");
                let canon = canonical_cycle_form(&word);
                out.insert((len, canon.letters().to_vec()));
            }
        }
    }
    out
}

// Criterion 8.
fn enumeration_contrast(p: &Params) -> Result<String, String> {
    let std = MarkedAlphabet::standard();
    let twisted = MarkedAlphabet::twisted();

    let mut std_oracle = DistanceOracle::new(Arc::clone(&std));
    let std_cycles =
        std_oracle.enumerate_isometric_cycles(p.enum_std_len).map_err(|e| e.to_string())?;
    err_if(std_cycles.is_empty(), || "no std cycles found at all".to_string())?;
    for cycle in &std_cycles {
        err_if(cycle.len() != 4, || {
            format!("std cycle {} has length {} > 4", cycle.format(), cycle.len())
        })?;
    }

    let mut twisted_oracle = DistanceOracle::new(Arc::clone(&twisted));
    let twisted_cycles = twisted_oracle
        .enumerate_isometric_cycles(p.enum_twisted_len)
        .map_err(|e| e.to_string())?;
    let w1_canon = canonical_cycle_form(&families::w_n(1));
    err_if(!twisted_cycles.contains(&w1_canon), || {
        format!("twisted enumeration misses {}", w1_canon.format())
    })?;

    for (alphabet, cycles) in [(&std, &std_cycles), (&twisted, &twisted_cycles)] {
        let brute = brute_force_cycles(alphabet, p.brute_force_len);
        let pruned: BTreeSet<(usize, Vec<Letter>)> = cycles
            .iter()
            .filter(|c| c.len() <= p.brute_force_len)
            .map(|c| (c.len(), c.letters().to_vec()))
            .collect();
        err_if(brute != pruned, || {
            format!(
                "{}: pruned enumeration ({} cycles) disagrees with brute force ({} cycles) at length <= {}",
                alphabet.name(),
                pruned.len(),
                brute.len(),
                p.brute_force_len
            )
        })?;
    }

    Ok(format!(
        "std <= {}: {} cycles, all length 4; twisted <= {}: {} cycles incl. w_1; brute-force agreement <= {}",
        p.enum_std_len,
        std_cycles.len(),
        p.enum_twisted_len,
        twisted_cycles.len(),
        p.brute_force_len
    ))
}

/// Freely reduced factor word of exactly `len` letters.
fn random_reduced_factor(rng: &mut ChaCha8Rng, len: usize) -> FactorWord {
    let mut letters: Vec<i8> = Vec::with_capacity(len);
    for _ in 0..len {
        let choices: Vec<i8> = [1i8, -1, 2, -2]
            .into_iter()
            .filter(|&c| letters.last() != Some(&-c))
            .collect();
        letters.push(choices[rng.gen_range(0..choices.len())]);
    }
    FactorWord::from_letters(letters)
}

// Criterion 9.
fn metric_sanity(p: &Params, seed: u64) -> Result<String, String> {
    let std = MarkedAlphabet::standard();
    let twisted = MarkedAlphabet::twisted();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9);

    // The l1 closed form: d(1, (p, q)) = |p| + |q| over std.
    let mut oracle = DistanceOracle::new(Arc::clone(&std));
    for i in 0..p.l1_samples {
        let ab_len = rng.gen_range(0..=8usize);
        let cd_len = rng.gen_range(0..=(8 - ab_len));
        let nf = NormalForm::new(
            random_reduced_factor(&mut rng, ab_len),
            random_reduced_factor(&mut rng, cd_len),
        );
        let d = oracle.distance_from_identity(&nf).map_err(|e| e.to_string())?;
        err_if(d != ab_len + cd_len, || {
            format!("sample {i}: d({nf}) = {d}, expected {}", ab_len + cd_len)
        })?;
    }

    // Bidirectional oracle vs plain unidirectional BFS, exhaustively on
    // full balls.
    for alphabet in [&std, &twisted] {
        let reference = reference_levels(alphabet, p.crosscheck_radius);
        let count = reference.len();
        let mut fresh = DistanceOracle::new(Arc::clone(alphabet));
        for (g, d) in reference {
            let got = fresh.distance_from_identity(&g).map_err(|e| e.to_string())?;
            err_if(got != d, || {
                format!("{}: oracle says {got}, BFS says {d} for {g}", alphabet.name())
            })?;
        }
        err_if(count == 0, || "empty reference ball".to_string())?;
    }

    // The generator-permuting automorphisms are isometries.
    let mut tw_oracle = DistanceOracle::new(Arc::clone(&twisted));
    for i in 0..p.automorphism_samples {
        let len = rng.gen_range(0..=6usize);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                Letter::new(rng.gen_range(0..4u8), if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg })
            })
            .collect();
        let word = Word::from_letters(letters, Arc::clone(&twisted)).map_err(|e| e.to_string())?;
        let base = tw_oracle
            .distance_from_identity(&twisted.eval(&word).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for auto in [Automorphism::Phi, Automorphism::Psi] {
            let image = apply_automorphism(auto, &word);
            let d = tw_oracle
                .distance_from_identity(&twisted.eval(&image).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            err_if(d != base, || {
                format!("sample {i}: {auto:?} changes distance {base} -> {d}")
            })?;
        }
    }

    Ok(format!(
        "{} l1 samples, full radius-{} balls cross-checked, {} automorphism samples",
        p.l1_samples, p.crosscheck_radius, p.automorphism_samples
    ))
}

// Criterion 10.
fn claim_identities() -> Result<String, String> {
    for n in 0..=10usize {
        err_if(!families::verify_claim_identities(n), || {
            format!("identities fail at n = {n}")
        })?;
    }
    Ok("letter-exact identities for n = 0..10".into())
}
