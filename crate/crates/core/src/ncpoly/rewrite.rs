use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::poly::NcPoly;
use super::word::{Alphabet, Word};
use super::NcError;
use crate::scalars::FieldCtx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

/// An ambiguity whose two one-step reductions have different normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub word: Word,
    pub rules: (usize, usize),
    pub left: NcPoly,
    pub right: NcPoly,
}

impl CriticalPair {
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        format!(
            "{}: {} vs {}",
            alphabet.display_word(&self.word),
            self.left.display(alphabet),
            self.right.display(alphabet)
        )
    }
}

/// Oriented rules over an alphabet; each rule strictly decreases the term order.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Arc<Alphabet>,
    ctx: FieldCtx,
    rules: Vec<RewriteRule>,
    by_lhs: HashMap<Word, usize>,
    lhs_lens: Vec<usize>,
}

impl RewriteSystem {
    /// Builds a system from already oriented rules, validating the invariants.
    pub fn new(
        alphabet: Arc<Alphabet>,
        ctx: FieldCtx,
        rules: Vec<RewriteRule>,
    ) -> Result<Self, NcError> {
        let mut by_lhs = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(NcError::Rule("empty left-hand side".into()));
            }
            if by_lhs.insert(r.lhs.clone(), i).is_some() {
                return Err(NcError::DuplicateLhs(
                    alphabet.display_word(&r.lhs).to_string(),
                ));
            }
            if r.rhs.ctx() != ctx {
                return Err(NcError::Rule("right-hand side over another field".into()));
            }
            for (w, _) in r.rhs.terms() {
                if alphabet.cmp_words(w, &r.lhs) != Ordering::Less {
                    return Err(NcError::NotDecreasing {
                        lhs: alphabet.display_word(&r.lhs).to_string(),
                        term: alphabet.display_word(w).to_string(),
                    });
                }
            }
        }
        for a in &rules {
            for b in &rules {
                if a.lhs != b.lhs && a.lhs.contains(&b.lhs) {
                    return Err(NcError::Rule(format!(
                        "redundant rule: {} contains {}",
                        alphabet.display_word(&a.lhs),
                        alphabet.display_word(&b.lhs)
                    )));
                }
            }
        }
        Ok(Self::assemble(alphabet, ctx, rules))
    }

    fn assemble(alphabet: Arc<Alphabet>, ctx: FieldCtx, rules: Vec<RewriteRule>) -> Self {
        let by_lhs = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lhs.clone(), i))
            .collect();
        let lhs_lens: BTreeSet<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        RewriteSystem {
            alphabet,
            ctx,
            rules,
            by_lhs,
            lhs_lens: lhs_lens.into_iter().collect(),
        }
    }

    /// The free algebra: no rules.
    pub fn free(alphabet: Arc<Alphabet>, ctx: FieldCtx) -> Self {
        Self::assemble(alphabet, ctx, Vec::new())
    }

    /// Orients and interreduces relators `r = 0` into a rule set.
    pub fn from_relations(
        alphabet: Arc<Alphabet>,
        ctx: FieldCtx,
        relations: &[NcPoly],
    ) -> Result<Self, NcError> {
        let mut sys = Self::free(alphabet, ctx);
        let mut queue: VecDeque<NcPoly> = relations.iter().cloned().collect();
        let mut steps = 0usize;
        while let Some(rel) = queue.pop_front() {
            steps += 1;
            if steps > 10_000 {
                return Err(NcError::Rule("interreduction did not terminate".into()));
            }
            let r = sys.normal_form(&rel);
            let Some((lw, lc)) = r.leading_term(&sys.alphabet) else {
                continue;
            };
            let lhs = lw.clone();
            if lhs.is_empty() {
                return Err(NcError::Rule("relations imply 1 = 0".into()));
            }
            let inv = lc.inv().expect("nonzero leading coefficient");
            let mut rhs = r.scale(&inv.neg());
            rhs.add_term(lhs.clone(), ctx.one());
            let mut kept = Vec::new();
            for old in std::mem::take(&mut sys.rules) {
                if old.lhs.contains(&lhs) {
                    let mut rel = old.rhs.neg();
                    rel.add_term(old.lhs, ctx.one());
                    queue.push_back(rel);
                } else {
                    kept.push(old);
                }
            }
            kept.push(RewriteRule { lhs, rhs });
            sys = Self::assemble(sys.alphabet.clone(), ctx, kept);
        }
        // Fully reduce right-hand sides so every rule is in final form.
        let mut rules = sys.rules.clone();
        for r in &mut rules {
            r.rhs = sys.normal_form(&r.rhs);
        }
        rules.sort_by(|a, b| sys.alphabet.cmp_words(&a.lhs, &b.lhs));
        Self::new(sys.alphabet.clone(), ctx, rules)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn max_lhs_len(&self) -> usize {
        self.lhs_lens.last().copied().unwrap_or(0)
    }

    /// Leftmost rule occurrence in `w`: (start position, rule index).
    pub fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for i in 0..letters.len() {
            for &l in &self.lhs_lens {
                if i + l > letters.len() {
                    break;
                }
                if let Some(&r) = self.by_lhs.get(&Word::from_letters(&letters[i..i + l])) {
                    return Some((i, r));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Whether some rule's lhs is a suffix of `w`.
    fn has_suffix_redex(&self, w: &Word) -> bool {
        let n = w.len();
        self.lhs_lens
            .iter()
            .take_while(|&&l| l <= n)
            .any(|&l| self.by_lhs.contains_key(&w.slice(n - l, n)))
    }

    /// Unique irreducible representative, processing words from the top of the
    /// term order down so each word is rewritten at most once.
    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        if self.rules.is_empty() {
            return p.clone();
        }
        let mut out = NcPoly::zero(self.ctx);
        let mut pending: BTreeMap<(u32, Word), crate::scalars::Scalar> = BTreeMap::new();
        for (w, c) in p.terms() {
            pending.insert((self.alphabet.weight(w), w.clone()), c.clone());
        }
        while let Some(((_, w), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    let rule = &self.rules[ri];
                    let end = pos + rule.lhs.len();
                    for (m, d) in rule.rhs.terms() {
                        let nw = w.splice(pos, end, m);
                        let key = (self.alphabet.weight(&nw), nw);
                        let add = &c * d;
                        match pending.get_mut(&key) {
                            Some(e) => *e = &*e + &add,
                            None => {
                                pending.insert(key, add);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly {
        self.normal_form(&NcPoly::word(self.ctx, w.clone()))
    }

    /// Product in the presented algebra.
    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.normal_form(&a.mul_free(b))
    }

    /// All overlap and inclusion ambiguities of length ≤ `max_deg` whose
    /// reductions disagree. Empty means normal forms are unique up to `max_deg`.
    pub fn local_confluence_report(&self, max_deg: usize) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (a, b) = (r1.lhs.letters(), r2.lhs.letters());
                // overlaps: proper suffix of lhs1 equals proper prefix of lhs2
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] != b[..k] {
                        continue;
                    }
                    let word = r1.lhs.concat(&r2.lhs.slice(k, b.len()));
                    if word.len() > max_deg {
                        continue;
                    }
                    let left = self.apply_at(&word, 0, i);
                    let right = self.apply_at(&word, a.len() - k, j);
                    self.compare(&mut out, word, (i, j), left, right);
                }
                // inclusions: lhs2 a proper factor of lhs1
                if i != j && a.len() <= max_deg {
                    if let Some(pos) = r1.lhs.find(&r2.lhs) {
                        let left = self.apply_at(&r1.lhs, 0, i);
                        let right = self.apply_at(&r1.lhs, pos, j);
                        self.compare(&mut out, r1.lhs.clone(), (i, j), left, right);
                    }
                }
            }
        }
        out
    }

    fn apply_at(&self, w: &Word, pos: usize, rule: usize) -> NcPoly {
        let r = &self.rules[rule];
        let mut p = NcPoly::zero(self.ctx);
        for (m, c) in r.rhs.terms() {
            p.add_term(w.splice(pos, pos + r.lhs.len(), m), c.clone());
        }
        p
    }

    fn compare(
        &self,
        out: &mut Vec<CriticalPair>,
        word: Word,
        rules: (usize, usize),
        left: NcPoly,
        right: NcPoly,
    ) {
        let (l, r) = (self.normal_form(&left), self.normal_form(&right));
        if l != r {
            out.push(CriticalPair {
                word,
                rules,
                left: l,
                right: r,
            });
        }
    }

    /// Irreducible words grouped by length, lengths `0..=max_len`.
    pub fn irreducible_words_by_length(&self, max_len: usize) -> Vec<Vec<Word>> {
        let mut levels = vec![vec![Word::empty()]];
        for _ in 0..max_len {
            let prev = levels.last().unwrap();
            let mut next = Vec::new();
            for w in prev {
                for g in self.alphabet.letters() {
                    let mut nw = w.clone();
                    nw.push(g);
                    if !self.has_suffix_redex(&nw) {
                        next.push(nw);
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    /// All irreducible words of length ≤ `max_len`, ascending in term order.
    pub fn monomials_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut all: Vec<Word> = self
            .irreducible_words_by_length(max_len)
            .into_iter()
            .flatten()
            .collect();
        all.sort_by(|a, b| self.alphabet.cmp_words(a, b));
        all
    }

    pub fn display_rule<'a>(&'a self, r: &'a RewriteRule) -> impl fmt::Display + 'a {
        RuleDisplay {
            alphabet: &self.alphabet,
            rule: r,
        }
    }
}

struct RuleDisplay<'a> {
    alphabet: &'a Alphabet,
    rule: &'a RewriteRule,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            self.alphabet.display_word(&self.rule.lhs),
            self.rule.rhs.display(self.alphabet)
        )
    }
}
