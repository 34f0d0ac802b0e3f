use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::NcError;

/// Index of a generator in its alphabet; index order is the precedence.
pub type Letter = u16;

/// A monomial: a finite sequence of generator indices.
///
/// `Ord` is length-then-lexicographic. The weighted term order used for
/// rewriting lives on [`Alphabet::cmp_words`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: Letter) -> Self {
        Word(SmallVec::from_slice(&[g]))
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: Letter) {
        self.0.push(g);
    }

    /// `prefix · middle · suffix` where prefix/suffix are slices of self.
    pub fn splice(&self, start: usize, end: usize, middle: &Word) -> Word {
        let mut v: SmallVec<[Letter; 8]> = SmallVec::from_slice(&self.0[..start]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[end..]);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters(&self.0[start..end])
    }

    /// Position of the first occurrence of `pat` as a factor.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Named generators in precedence order, with positive weights for the
/// weighted degree-lexicographic term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    weights: Vec<u32>,
    lookup: HashMap<String, Letter>,
}

impl Alphabet {
    /// Generators listed from lowest to highest precedence, unit weights.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, NcError> {
        Self::with_weights(names, &vec![1; names.len()])
    }

    pub fn with_weights<S: AsRef<str>>(names: &[S], weights: &[u32]) -> Result<Self, NcError> {
        if names.len() != weights.len() {
            return Err(NcError::Alphabet(format!(
                "{} generators but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if names.len() > Letter::MAX as usize {
            return Err(NcError::Alphabet("too many generators".into()));
        }
        let mut lookup = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(NcError::Alphabet(format!("invalid generator name {n:?}")));
            }
            if lookup.insert(n.to_string(), i as Letter).is_some() {
                return Err(NcError::Alphabet(format!("duplicate generator {n:?}")));
            }
        }
        if let Some(w) = weights.iter().position(|&w| w == 0) {
            return Err(NcError::Alphabet(format!(
                "generator {:?} has weight 0",
                names[w].as_ref()
            )));
        }
        Ok(Alphabet {
            names: names.iter().map(|n| n.as_ref().to_string()).collect(),
            weights: weights.to_vec(),
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, g: Letter) -> &str {
        &self.names[g as usize]
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.lookup.get(name).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    pub fn weight(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&g| self.weights[g as usize]).sum()
    }

    /// The term order: total weight, then length, then lexicographic by precedence.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.weight(a)
            .cmp(&self.weight(b))
            .then_with(|| a.cmp(b))
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, NcError> {
        names
            .iter()
            .map(|n| {
                self.index(n)
                    .ok_or_else(|| NcError::UnknownGenerator(n.to_string()))
            })
            .collect()
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { alphabet: self, word: w }
    }
}

/// Generator names: an identifier optionally followed by an inverse marker
/// such as `z^-1`.
fn valid_name(n: &str) -> bool {
    let base = match n.find('^') {
        Some(i) => {
            let exp = &n[i + 1..];
            if !(exp.starts_with('-') && exp.len() > 1 && exp[1..].bytes().all(|b| b.is_ascii_digit())) {
                return false;
            }
            &n[..i]
        }
        None => n,
    };
    let mut chars = base.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let g = letters[i];
            let name = self.alphabet.name(g);
            let mut run = 1;
            if !name.contains('^') {
                while i + run < letters.len() && letters[i + run] == g {
                    run += 1;
                }
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{name}^{run}")?;
            } else {
                write!(f, "{name}")?;
            }
            i += run;
        }
        Ok(())
    }
}
