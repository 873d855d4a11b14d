//! Simultaneous conjugacy of word tuples in a free group.

use super::word::Word;

/// Solutions `d` of `d a d⁻¹ = b` for cyclically reduced `a`, `b`: some
/// rotation `b = y x` of `a = x y` gives `d = x⁻¹`.
fn rotation_conjugator(a: &Word, b: &Word) -> Option<Word> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let al = a.letters();
    let bl = b.letters();
    (0..n.max(1)).find_map(|j| {
        let rotated = (0..n).all(|i| bl[i] == al[(i + j) % n]);
        rotated.then(|| Word::from_letters(al[..j].to_vec()).inverse())
    })
}

/// A conjugator `c` with `c u c⁻¹ = v`, together with a generator of the
/// centralizer of `u` (the root of `u`), so that every solution is
/// `c · root^k`.
fn solve_pair(u: &Word, v: &Word) -> Option<(Word, Word, Word, Word)> {
    let (s, core_u) = u.cyclic_decomposition();
    let (t, core_v) = v.cyclic_decomposition();
    let x_inv = rotation_conjugator(&core_u, &core_v)?;
    let c0 = t.mul(&x_inv).mul(&s.inverse());
    Some((c0, s, core_u.root(), x_inv))
}

#[derive(Debug, PartialEq, Eq)]
enum Admissible {
    All,
    Only(i64),
    Empty,
}

/// Exponents `k` with `r^k a r^-k = b`; `r` is nontrivial.
fn admissible(r: &Word, a: &Word, b: &Word) -> Admissible {
    let bound = ((a.len() + b.len()) / r.len()) as i64 + 3;
    let mut hits = Vec::new();
    let mut conj = a.conjugate_by(&r.pow(-bound - 1));
    for k in -bound..=bound {
        conj = conj.conjugate_by(r);
        if conj == *b {
            hits.push(k);
            if hits.len() == 2 {
                return Admissible::All;
            }
        }
    }
    match hits.first() {
        Some(&k) => Admissible::Only(k),
        None => Admissible::Empty,
    }
}

/// Returns `c` with `c uᵢ c⁻¹ = vᵢ` for every `i`, or `None`. Among all
/// solutions a shortest one is returned. Words need not be reduced.
pub fn simultaneously_conjugate(u: &[Word], v: &[Word]) -> Option<Word> {
    assert_eq!(u.len(), v.len(), "tuples must have equal length");
    let u: Vec<Word> = u.iter().map(Word::reduced).collect();
    let v: Vec<Word> = v.iter().map(Word::reduced).collect();
    let Some(first) = u.iter().position(|w| !w.is_empty()) else {
        return v.iter().all(Word::is_empty).then(Word::identity);
    };
    let (c0, s, r, _) = solve_pair(&u[first], &v[first])?;
    // Work in the frame where the centralizer is generated by r:
    // c = c0 · s r^k s⁻¹, and c uᵢ c⁻¹ = vᵢ becomes
    // r^k (s⁻¹ uᵢ s) r^-k = s⁻¹ c0⁻¹ vᵢ c0 s.
    let frame = c0.mul(&s);
    let mut fixed: Option<i64> = None;
    for (ui, vi) in u.iter().zip(&v) {
        let a = ui.conjugate_by(&s.inverse());
        let b = vi.conjugate_by(&frame.inverse());
        match admissible(&r, &a, &b) {
            Admissible::Empty => return None,
            Admissible::All => {}
            Admissible::Only(k) => match fixed {
                Some(prev) if prev != k => return None,
                _ => fixed = Some(k),
            },
        }
    }
    let candidate = |k: i64| frame.mul(&r.pow(k)).mul(&s.inverse());
    let c = match fixed {
        Some(k) => candidate(k),
        None => {
            let span = (frame.len() + s.len()) as i64 / r.len() as i64 + 2;
            (-span..=span).map(candidate).min_by_key(|c| (c.len(), c.clone())).expect("nonempty range")
        }
    };
    u.iter().zip(&v).all(|(ui, vi)| ui.conjugate_by(&c) == *vi).then_some(c)
}
