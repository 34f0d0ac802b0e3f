use std::sync::Arc;

use super::algebra::PresentedHopf;
use super::tensor::TensorPoly;
use super::HopfError;
use crate::ncpoly::{Alphabet, Letter, NcPoly, RewriteRule, RewriteSystem, Word};
use crate::scalars::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Free,
    FreeAbelian,
}

/// A free or free abelian group on named generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    pub kind: GroupKind,
    pub names: Vec<String>,
}

impl GroupPresentation {
    pub fn new(kind: GroupKind, names: &[&str]) -> Result<Self, HopfError> {
        if names.is_empty() {
            return Err(HopfError::Schema("group rank must be at least 1".into()));
        }
        Ok(GroupPresentation {
            kind,
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Letter of the group algebra for generator `i`, inverse or not.
    pub fn letter(i: usize, inverse: bool) -> Letter {
        (2 * i + inverse as usize) as Letter
    }
}

/// The group algebra kΓ: generators `g`, `g^-1`, every generator group-like.
pub fn group_algebra(group: &GroupPresentation, ctx: FieldCtx) -> Result<PresentedHopf, HopfError> {
    let mut names = Vec::new();
    for n in &group.names {
        names.push(n.clone());
        names.push(format!("{n}^-1"));
    }
    let al = Arc::new(Alphabet::new(&names)?);
    let one = NcPoly::one(ctx);
    let mut rules = Vec::new();
    let l = GroupPresentation::letter;
    for i in 0..group.rank() {
        rules.push(RewriteRule {
            lhs: Word::from_letters(&[l(i, false), l(i, true)]),
            rhs: one.clone(),
        });
        rules.push(RewriteRule {
            lhs: Word::from_letters(&[l(i, true), l(i, false)]),
            rhs: one.clone(),
        });
    }
    if group.kind == GroupKind::FreeAbelian {
        for j in 0..group.rank() {
            for i in 0..j {
                for sj in [false, true] {
                    for si in [false, true] {
                        rules.push(RewriteRule {
                            lhs: Word::from_letters(&[l(j, sj), l(i, si)]),
                            rhs: NcPoly::word(ctx, Word::from_letters(&[l(i, si), l(j, sj)])),
                        });
                    }
                }
            }
        }
    }
    let rws = RewriteSystem::new(al.clone(), ctx, rules)?;
    let mut delta = Vec::new();
    let mut antipode = Vec::new();
    for g in al.letters() {
        let w = Word::letter(g);
        delta.push(TensorPoly::term(w.clone(), w, ctx.one()));
        antipode.push(NcPoly::letter(ctx, g ^ 1));
    }
    let grouplikes = al.letters().map(|g| NcPoly::letter(ctx, g)).collect();
    let label = match group.kind {
        GroupKind::Free => format!("kF({})", group.names.join(",")),
        GroupKind::FreeAbelian => format!("kZ^{}({})", group.rank(), group.names.join(",")),
    };
    PresentedHopf::new(
        label,
        rws,
        delta,
        vec![ctx.one(); al.len()],
        antipode,
        grouplikes,
    )
}

/// Name for a generator of the second factor that clashes with the first.
fn fresh_name(name: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let (base, suffix) = match name.find('^') {
        Some(i) => (&name[..i], &name[i..]),
        None => (name, ""),
    };
    (2..)
        .map(|k| format!("{base}_{k}{suffix}"))
        .find(|n| !taken(n))
        .expect("unbounded search")
}

/// Joins two alphabets, renaming clashes in the second; returns the union
/// and the letter offset of the second factor.
fn union_alphabet(a: &Alphabet, b: &Alphabet) -> Result<(Arc<Alphabet>, Letter), HopfError> {
    let mut names: Vec<String> = a.names().to_vec();
    for n in b.names() {
        let name = if names.contains(n) {
            let snapshot = names.clone();
            fresh_name(n, &|c| snapshot.iter().any(|x| x == c) || b.index(c).is_some())
        } else {
            n.clone()
        };
        names.push(name);
    }
    let mut weights = a.weights().to_vec();
    weights.extend_from_slice(b.weights());
    Ok((
        Arc::new(Alphabet::with_weights(&names, &weights)?),
        a.len() as Letter,
    ))
}

fn shift_word(w: &Word, offset: Letter) -> Word {
    w.letters().iter().map(|&g| g + offset).collect()
}

fn shift_poly(p: &NcPoly, offset: Letter) -> NcPoly {
    p.map_words(|w| shift_word(w, offset))
}

fn shift_tensor(t: &TensorPoly, offset: Letter) -> TensorPoly {
    TensorPoly::from_terms(
        t.ctx(),
        t.terms()
            .map(|((u, v), c)| ((shift_word(u, offset), shift_word(v, offset)), c.clone())),
    )
}

/// Shared structure of free and tensor products; `cross` adds the rules
/// between the factors.
fn combine(
    h: &PresentedHopf,
    l: &PresentedHopf,
    label: String,
    cross: impl Fn(Letter, Letter) -> Option<RewriteRule>,
) -> Result<PresentedHopf, HopfError> {
    if h.ctx() != l.ctx() {
        return Err(HopfError::FieldMismatch);
    }
    let ctx = h.ctx();
    let (al, off) = union_alphabet(h.alphabet(), l.alphabet())?;
    let mut rules: Vec<RewriteRule> = h.rws().rules().to_vec();
    for r in l.rws().rules() {
        rules.push(RewriteRule {
            lhs: shift_word(&r.lhs, off),
            rhs: shift_poly(&r.rhs, off),
        });
    }
    for y in l.alphabet().letters() {
        for x in h.alphabet().letters() {
            rules.extend(cross(x, y + off));
        }
    }
    let rws = RewriteSystem::new(al, ctx, rules)?;
    let mut delta = h.delta_table().to_vec();
    delta.extend(l.delta_table().iter().map(|t| shift_tensor(t, off)));
    let mut epsilon = h.epsilon_table().to_vec();
    epsilon.extend_from_slice(l.epsilon_table());
    let mut antipode = h.antipode_table().to_vec();
    antipode.extend(l.antipode_table().iter().map(|p| shift_poly(p, off)));
    let mut grouplikes = h.declared_grouplikes().to_vec();
    grouplikes.extend(l.declared_grouplikes().iter().map(|p| shift_poly(p, off)));
    PresentedHopf::new(label, rws, delta, epsilon, antipode, grouplikes)
}

/// Free product `H ∗ L`: the union of the presentations with no rules
/// between the factors.
pub fn free_product(h: &PresentedHopf, l: &PresentedHopf) -> Result<PresentedHopf, HopfError> {
    combine(h, l, format!("{}*{}", h.label(), l.label()), |_, _| None)
}

/// Tensor product `H ⊗ L`: letters of `L` commute past letters of `H`.
pub fn tensor_product(h: &PresentedHopf, l: &PresentedHopf) -> Result<PresentedHopf, HopfError> {
    let ctx = h.ctx();
    combine(h, l, format!("{}(x){}", h.label(), l.label()), |x, y| {
        Some(RewriteRule {
            lhs: Word::from_letters(&[y, x]),
            rhs: NcPoly::word(ctx, Word::from_letters(&[x, y])),
        })
    })
}

/// Quotient by the two-sided ideal generated by some generators, which must
/// span a Hopf ideal (ε vanishes on them; Δ and S are checked to descend).
/// Returns the quotient and, for each generator of `h`, its image letter.
pub fn quotient_by_generators(
    h: &PresentedHopf,
    killed: &[&str],
    label: &str,
) -> Result<(PresentedHopf, Vec<Option<Letter>>), HopfError> {
    let ctx = h.ctx();
    let al = h.alphabet();
    let mut dead = vec![false; al.len()];
    for k in killed {
        dead[h.generator(k)? as usize] = true;
    }
    let mut image: Vec<Option<Letter>> = Vec::new();
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for g in al.letters() {
        if dead[g as usize] {
            image.push(None);
        } else {
            image.push(Some(names.len() as Letter));
            names.push(al.name(g).to_string());
            weights.push(al.weights()[g as usize]);
        }
    }
    let qal = Arc::new(Alphabet::with_weights(&names, &weights)?);
    let push_word = |w: &Word| -> Option<Word> {
        w.letters().iter().map(|&g| image[g as usize]).collect()
    };
    let push = |p: &NcPoly| -> NcPoly {
        NcPoly::from_terms(
            ctx,
            p.terms()
                .filter_map(|(w, c)| push_word(w).map(|w| (w, c.clone()))),
        )
    };
    let relations: Vec<NcPoly> = h
        .rws()
        .rules()
        .iter()
        .map(|r| {
            let mut rel = r.rhs.neg();
            rel.add_term(r.lhs.clone(), ctx.one());
            push(&rel)
        })
        .collect();
    let rws = RewriteSystem::from_relations(qal, ctx, &relations)?;
    let mut delta = Vec::new();
    let mut epsilon = Vec::new();
    let mut antipode = Vec::new();
    for g in al.letters() {
        let d = &h.delta_table()[g as usize];
        let s = &h.antipode_table()[g as usize];
        if dead[g as usize] {
            let pushed_delta = d
                .terms()
                .any(|((u, v), _)| push_word(u).is_some() && push_word(v).is_some());
            if !h.epsilon_table()[g as usize].is_zero() || !push(s).is_zero() || pushed_delta {
                return Err(HopfError::Schema(format!(
                    "generator {} does not span a Hopf ideal",
                    al.name(g)
                )));
            }
            continue;
        }
        delta.push(TensorPoly::from_terms(
            ctx,
            d.terms().filter_map(|((u, v), c)| {
                Some(((push_word(u)?, push_word(v)?), c.clone()))
            }),
        ));
        epsilon.push(h.epsilon_table()[g as usize].clone());
        antipode.push(push(s));
    }
    let grouplikes = h.declared_grouplikes().iter().map(push).collect();
    let q = PresentedHopf::new(label, rws, delta, epsilon, antipode, grouplikes)?;
    Ok((q, image))
}
