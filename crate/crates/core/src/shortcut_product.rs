//! Shortcut certificates for null words over the standard alphabet
//! `{a,b,c,d}`: a rotation, a split `w1 w2`, and a word `mu` equal to `w1`
//! in `G` obtained by deleting a null factor subword, so that the two
//! loops `w1 + mu` and `mu + w2` are both strictly shorter than `w`.
//!
//! Guarantees, with `l = |w|`: the majority projection keeps at least
//! half the letters, so the projected null word has `|u| >= l/2`, and the
//! centroid split gives a piece with `|u_i| >= floor(|u|/3)`, which is at
//! least `floor(l/6)`. The two minimal arcs spanning the pieces are
//! disjoint, so the selected (shorter) one has `|w1| <= l/2`, while
//! `|mu| = |w1| - |u_i|`. Hence `loop1 = 2|w1| - |u_i| <= l - floor(l/6)`
//! and `loop2 = l - |u_i| <= l - floor(l/6)`; these are asserted from
//! `l >= 24` on. From `l >= 42` on, the same arithmetic yields the ratio
//! form with constant 6/7: `l/7 <= floor(l/6) <= |u_i| <= |w1| <= l/2 <=
//! |w2|` (the first inequality is exactly where `l >= 42` is needed) and
//! `|mu| <= |w1| - floor(l/6) <= (6/7)|w1|`. Certificates are still
//! produced below the thresholds, best effort; only the numeric
//! guarantees are deferred.

use std::fmt;

use crate::group::MarkedAlphabet;
use crate::shortcut_free::split_null_word;
use crate::words::Word;
use crate::{Error, Result};

/// Which free factor the deleted null subword lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Ab,
    Cd,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Ab => "ab",
            Factor::Cd => "cd",
        })
    }
}

/// Witness that a null word can be shortcut: `cyclic_conjugate(w,
/// rotation) = w1 ++ w2`, `mu` is `w1` with the letters at
/// `deleted_positions` removed, and `eval(mu) = eval(w1)` in `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortcutCertificate {
    pub rotation: usize,
    /// `|w1|`, the split point of the rotated word.
    pub split: usize,
    pub w1: Word,
    pub w2: Word,
    pub mu: Word,
    pub factor: Factor,
    /// Positions within `w1` of the deleted letters, ascending.
    pub deleted_positions: Vec<usize>,
    /// `|w1| + |mu|`: the loop made of `w1` against the reverse of `mu`.
    pub loop1_length: usize,
    /// `|mu| + |w2|`: the loop made of `mu` followed by `w2`.
    pub loop2_length: usize,
}

impl ShortcutCertificate {
    /// Single-line serialization with fixed field order, words in the
    /// compact text grammar, for external re-verification.
    pub fn to_json_line(&self) -> String {
        format!(
            "{{\"rotation\":{},\"split\":{},\"w1\":\"{}\",\"w2\":\"{}\",\"mu\":\"{}\",\"factor\":\"{}\",\"loop1\":{},\"loop2\":{}}}",
            self.rotation,
            self.split,
            self.w1.format(),
            self.w2.format(),
            self.mu.format(),
            self.factor,
            self.loop1_length,
            self.loop2_length,
        )
    }
}

/// Reason a certificate failed independent re-verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateViolation {
    /// `w` does not represent the identity.
    NotNull,
    /// `cyclic_conjugate(w, rotation)` is not `w1 ++ w2`.
    RotationMismatch,
    /// `split` differs from `|w1|`.
    SplitMismatch,
    /// `mu` is not `w1` minus the deleted positions, or a deleted letter
    /// is outside the declared factor.
    DeletionMismatch,
    /// `eval(mu) != eval(w1)`.
    ElementMismatch,
    /// Stored loop lengths disagree with `|w1| + |mu|` / `|mu| + |w2|`.
    LoopLengthMismatch,
    /// `|w| >= 24` but some loop exceeds `|w| - floor(|w|/6)`.
    LoopBoundViolated,
    /// `|w| >= 42` but the 6/7-ratio form fails.
    RatioBoundViolated,
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reason = match self {
            CertificateViolation::NotNull => "word is not null",
            CertificateViolation::RotationMismatch => "rotation mismatch",
            CertificateViolation::SplitMismatch => "split length mismatch",
            CertificateViolation::DeletionMismatch => "deleted positions do not produce mu",
            CertificateViolation::ElementMismatch => "element mismatch between mu and w1",
            CertificateViolation::LoopLengthMismatch => "loop length arithmetic mismatch",
            CertificateViolation::LoopBoundViolated => "subdivided loop exceeds length bound",
            CertificateViolation::RatioBoundViolated => "6/7 ratio bound violated",
        };
        f.write_str(reason)
    }
}

fn factor_of(alphabet: &MarkedAlphabet, sym: u8) -> Result<Factor> {
    match alphabet.symbol(sym) {
        'a' | 'b' => Ok(Factor::Ab),
        'c' | 'd' => Ok(Factor::Cd),
        other => Err(Error::UnknownGenerator(other)),
    }
}

/// Builds a shortcut certificate for a null word over `{a,b,c,d}`.
///
/// Chooses the majority factor (ties go to `{a,b}`), projects `w` to its
/// null factor word `u`, splits `u` at a centroid, and takes as `w1` the
/// shorter of the two minimal cyclic arcs of `w` that span the split
/// pieces (ties go to the first piece). `mu` is `w1` with that piece's
/// letters deleted, which cannot change the element since the piece is
/// null in its own factor.
pub fn shortcut(w: &Word) -> Result<ShortcutCertificate> {
    let std = MarkedAlphabet::standard();
    if w.is_empty() || !std.eval(w)?.is_identity() {
        return Err(Error::NotNull);
    }
    let n = w.len();

    let factors: Vec<Factor> = w
        .letters()
        .iter()
        .map(|l| factor_of(w.alphabet(), l.sym))
        .collect::<Result<_>>()?;
    let ab_count = factors.iter().filter(|&&f| f == Factor::Ab).count();
    let majority = if 2 * ab_count >= n { Factor::Ab } else { Factor::Cd };

    // Projection to the majority factor, with the w-position of each
    // projected letter.
    let positions: Vec<usize> =
        (0..n).filter(|&i| factors[i] == majority).collect();
    let projected = Word::from_letters(
        positions.iter().map(|&i| w.letters()[i]).collect(),
        std::sync::Arc::clone(w.alphabet()),
    )?;
    let u_len = projected.len();

    let split = split_null_word(&projected)?;
    let pieces = [
        (split.rotation, split.first.len()),
        ((split.rotation + split.first.len()) % u_len.max(1), split.second.len()),
    ];

    // Minimal cyclic arc of w containing exactly one piece's letters:
    // from the w-position of its first letter to that of its last.
    let arc = |&(start, len): &(usize, usize)| -> Option<(usize, usize)> {
        if len == 0 {
            return None;
        }
        let first = positions[start];
        let last = positions[(start + len - 1) % u_len];
        Some((first, (last + n - first) % n + 1))
    };
    let arcs = [arc(&pieces[0]), arc(&pieces[1])];
    let pick = match (arcs[0], arcs[1]) {
        (Some((_, len0)), Some((_, len1))) => usize::from(len1 < len0),
        (Some(_), None) => 0,
        (None, Some(_)) => 1,
        (None, None) => unreachable!("a nonempty null word has a nonempty piece"),
    };
    let (rotation, arc_len) = arcs[pick].expect("picked arc exists");

    let w1 = w.cyclic_subword(rotation, arc_len)?;
    let w2 = w.cyclic_subword((rotation + arc_len) % n, n - arc_len)?;
    let (piece_start, piece_len) = pieces[pick];
    let deleted_positions: Vec<usize> = (0..piece_len)
        .map(|j| (positions[(piece_start + j) % u_len] + n - rotation) % n)
        .collect();
    debug_assert!(deleted_positions.windows(2).all(|p| p[0] < p[1]));

    let mut keep = vec![true; arc_len];
    for &p in &deleted_positions {
        keep[p] = false;
    }
    let mu = Word::from_letters(
        w1.letters()
            .iter()
            .zip(&keep)
            .filter_map(|(&l, &k)| k.then_some(l))
            .collect(),
        std::sync::Arc::clone(w.alphabet()),
    )?;
    debug_assert_eq!(std.eval(&mu)?, std.eval(&w1)?);

    let loop1_length = w1.len() + mu.len();
    let loop2_length = mu.len() + w2.len();
    Ok(ShortcutCertificate {
        rotation,
        split: arc_len,
        w1,
        w2,
        mu,
        factor: majority,
        deleted_positions,
        loop1_length,
        loop2_length,
    })
}

/// Re-checks every certificate invariant independently of how the
/// certificate was produced. `Ok(())` means the certificate is valid,
/// including the numeric guarantees applicable to `|w|`.
pub fn verify_certificate(
    w: &Word,
    cert: &ShortcutCertificate,
) -> std::result::Result<(), CertificateViolation> {
    let std = MarkedAlphabet::standard();
    let null = std
        .eval(w)
        .map(|nf| nf.is_identity())
        .unwrap_or(false);
    if !null {
        return Err(CertificateViolation::NotNull);
    }

    let rotated = match w.cyclic_conjugate(cert.rotation) {
        Ok(word) => word,
        Err(_) => return Err(CertificateViolation::RotationMismatch),
    };
    let joined = match cert.w1.concat(&cert.w2) {
        Ok(word) => word,
        Err(_) => return Err(CertificateViolation::RotationMismatch),
    };
    if rotated != joined {
        return Err(CertificateViolation::RotationMismatch);
    }
    if cert.split != cert.w1.len() {
        return Err(CertificateViolation::SplitMismatch);
    }

    let eval_mu = std.eval(&cert.mu);
    let eval_w1 = std.eval(&cert.w1);
    match (eval_mu, eval_w1) {
        (Ok(m), Ok(x)) if m == x => {}
        _ => return Err(CertificateViolation::ElementMismatch),
    }

    let in_range = cert.deleted_positions.iter().all(|&p| p < cert.w1.len());
    let ascending = cert.deleted_positions.windows(2).all(|p| p[0] < p[1]);
    if !in_range || !ascending {
        return Err(CertificateViolation::DeletionMismatch);
    }
    let factor_ok = cert.deleted_positions.iter().all(|&p| {
        factor_of(cert.w1.alphabet(), cert.w1.letters()[p].sym)
            .map(|f| f == cert.factor)
            .unwrap_or(false)
    });
    if !factor_ok {
        return Err(CertificateViolation::DeletionMismatch);
    }
    let mut keep = vec![true; cert.w1.len()];
    for &p in &cert.deleted_positions {
        keep[p] = false;
    }
    let expected_mu: Vec<_> = cert
        .w1
        .letters()
        .iter()
        .zip(&keep)
        .filter_map(|(&l, &k)| k.then_some(l))
        .collect();
    if expected_mu != cert.mu.letters() {
        return Err(CertificateViolation::DeletionMismatch);
    }

    if cert.loop1_length != cert.w1.len() + cert.mu.len()
        || cert.loop2_length != cert.mu.len() + cert.w2.len()
    {
        return Err(CertificateViolation::LoopLengthMismatch);
    }

    let l = w.len();
    if l >= 24 {
        let bound = l - l / 6;
        if cert.loop1_length > bound || cert.loop2_length > bound {
            return Err(CertificateViolation::LoopBoundViolated);
        }
    }
    if l >= 42 {
        let ratio_ok = 7 * cert.w1.len() >= l
            && cert.w1.len() <= cert.w2.len()
            && 7 * cert.mu.len() <= 6 * cert.w1.len();
        if !ratio_ok {
            return Err(CertificateViolation::RatioBoundViolated);
        }
    }
    Ok(())
}
