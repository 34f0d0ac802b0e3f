use std::sync::Arc;

use serde::Serialize;

use super::matrix::{poly_vec, Comodule};
use super::ComodError;
use crate::hopfalg::{preset, PresentedHopf, TensorPoly};
use crate::linalg::rank;
use crate::ncpoly::{Alphabet, Letter, NcPoly, RewriteSystem, Word};
use crate::scalars::{FieldCtx, Scalar};

/// A letter of the free monoid grading R(F): `Alpha` for the x-generators,
/// `Beta` for the y-generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RfDegree {
    Alpha,
    Beta,
}

/// Parses a degree such as `alpha*beta`, `αβ` or `ab` (a = alpha, b = beta).
pub fn parse_rf_degree(src: &str) -> Result<Vec<RfDegree>, ComodError> {
    let s = src.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start_matches(['*', ' ']);
        let (deg, len) = if rest.starts_with("alpha") {
            (RfDegree::Alpha, 5)
        } else if rest.starts_with("beta") {
            (RfDegree::Beta, 4)
        } else if rest.starts_with('α') {
            (RfDegree::Alpha, 'α'.len_utf8())
        } else if rest.starts_with('β') {
            (RfDegree::Beta, 'β'.len_utf8())
        } else if rest.starts_with('a') {
            (RfDegree::Alpha, 1)
        } else if rest.starts_with('b') {
            (RfDegree::Beta, 1)
        } else if rest.is_empty() {
            break;
        } else {
            return Err(ComodError::Shape(format!("malformed degree {src:?}")));
        };
        rest = &rest[len..];
        // optional power
        if let Some(r) = rest.strip_prefix('^') {
            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            let k: usize = digits
                .parse()
                .map_err(|_| ComodError::Shape(format!("malformed degree {src:?}")))?;
            out.extend(std::iter::repeat_n(deg, k));
            rest = &r[digits.len()..];
        } else {
            out.push(deg);
        }
    }
    Ok(out)
}

pub fn show_rf_degree(d: &[RfDegree]) -> String {
    if d.is_empty() {
        return "1".into();
    }
    d.iter()
        .map(|x| match x {
            RfDegree::Alpha => "alpha",
            RfDegree::Beta => "beta",
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// The comodule algebra generated by `x_1..x_n`, `y_1..y_n` with
/// `Σ x_k y_k = 0` and `Σ F_{kl} y_k x_l = F_{n1}`.
#[derive(Debug)]
pub struct RfAlgebra {
    n: usize,
    f: Vec<Vec<Scalar>>,
    rws: RewriteSystem,
    host: Option<Arc<PresentedHopf>>,
}

impl RfAlgebra {
    /// Builds the algebra for an invertible `F`; rules are checked for
    /// confluence up to degree 6. No coaction host is attached.
    pub fn new(f: Vec<Vec<Scalar>>) -> Result<Self, ComodError> {
        let n = f.len();
        if n < 2 || f.iter().any(|r| r.len() != n) {
            return Err(ComodError::Shape("F must be square of size at least 2".into()));
        }
        let ctx = f[0][0].ctx();
        let rows = f.iter().map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, c.clone()))
                .collect()
        });
        if rank(ctx, rows) != n {
            return Err(ComodError::SingularF);
        }
        // precedence x_n < … < x_1 < y_1 < … < y_n
        let mut names: Vec<String> = (1..=n).rev().map(|i| format!("x{i}")).collect();
        names.extend((1..=n).map(|i| format!("y{i}")));
        let al = Arc::new(Alphabet::new(&names)?);
        let x = |i: usize| al.index(&format!("x{i}")).unwrap();
        let y = |i: usize| al.index(&format!("y{i}")).unwrap();
        let mut r1 = NcPoly::zero(ctx);
        let mut r2 = NcPoly::constant(f[n - 1][0].neg());
        for k in 1..=n {
            r1.add_term(Word::from_letters(&[x(k), y(k)]), ctx.one());
            for l in 1..=n {
                r2.add_term(Word::from_letters(&[y(k), x(l)]), f[k - 1][l - 1].clone());
            }
        }
        let rws = RewriteSystem::from_relations(al, ctx, &[r1, r2])?;
        let pairs = rws.local_confluence_report(6);
        if !pairs.is_empty() {
            return Err(ComodError::NotConfluent(
                pairs.iter().map(|p| p.describe(rws.alphabet())).collect(),
            ));
        }
        Ok(RfAlgebra {
            n,
            f,
            rws,
            host: None,
        })
    }

    /// R(q): F = diag(q⁻¹, q) over ℚ(q), with coaction host H(q).
    pub fn hq() -> Result<Self, ComodError> {
        let ctx = FieldCtx::RationalFunction;
        let f = vec![vec![ctx.q_pow(-1)?, ctx.zero()], vec![ctx.zero(), ctx.q_pow(1)?]];
        let mut r = Self::new(f)?;
        r.host = Some(preset("hq")?);
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &[Vec<Scalar>] {
        &self.f
    }

    pub fn rws(&self) -> &RewriteSystem {
        &self.rws
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.rws.alphabet()
    }

    pub fn ctx(&self) -> FieldCtx {
        self.rws.ctx()
    }

    pub fn host(&self) -> Result<&Arc<PresentedHopf>, ComodError> {
        self.host.as_ref().ok_or(ComodError::NoCoactionHost)
    }

    pub fn x(&self, i: usize) -> Letter {
        self.alphabet().index(&format!("x{i}")).expect("generator exists")
    }

    pub fn y(&self, i: usize) -> Letter {
        self.alphabet().index(&format!("y{i}")).expect("generator exists")
    }

    fn letter_degree(&self, g: Letter) -> RfDegree {
        if self.alphabet().name(g).starts_with('x') {
            RfDegree::Alpha
        } else {
            RfDegree::Beta
        }
    }

    /// 1-based index of a generator within its family.
    fn letter_index(&self, g: Letter) -> usize {
        self.alphabet().name(g)[1..].parse().expect("generated name")
    }

    pub fn degree(&self, w: &Word) -> Vec<RfDegree> {
        w.letters().iter().map(|&g| self.letter_degree(g)).collect()
    }

    pub fn show(&self, p: &NcPoly) -> String {
        p.display(self.alphabet()).to_string()
    }

    pub fn parse(&self, src: &str) -> Result<NcPoly, ComodError> {
        let p = crate::ncpoly::parse_poly(src, self.alphabet(), self.ctx())?;
        Ok(self.rws.normal_form(&p))
    }

    /// Irreducible words of the given multidegree, ordered by the generator
    /// indices (x_1 before x_2, and so on).
    pub fn component_basis(&self, deg: &[RfDegree]) -> Vec<Word> {
        let mut ws: Vec<Word> = self
            .rws
            .irreducible_words_by_length(deg.len())
            .pop()
            .unwrap_or_default()
            .into_iter()
            .filter(|w| self.degree(w) == deg)
            .collect();
        ws.sort_by_key(|w| {
            w.letters()
                .iter()
                .map(|&g| self.letter_index(g))
                .collect::<Vec<_>>()
        });
        ws
    }

    /// ρ on a generator: `ρ(x_i) = Σ_k x_k ⊗ u_{ki}`, `ρ(y_i) = Σ_k y_k ⊗ v_{ki}`.
    fn rho_letter(&self, g: Letter) -> Result<TensorPoly, ComodError> {
        let host = self.host()?;
        let ctx = self.ctx();
        let i = self.letter_index(g);
        let (fam, mat) = match self.letter_degree(g) {
            RfDegree::Alpha => ('x', 'u'),
            RfDegree::Beta => ('y', 'v'),
        };
        let mut t = TensorPoly::zero(ctx);
        for k in 1..=self.n {
            let left = self.alphabet().index(&format!("{fam}{k}")).unwrap();
            let right = host.generator(&format!("{mat}{k}{i}"))?;
            t.add_term(Word::letter(left), Word::letter(right), ctx.one());
        }
        Ok(t)
    }

    /// The coaction ρ, extended multiplicatively and normalized in both legs.
    pub fn rho(&self, p: &NcPoly) -> Result<TensorPoly, ComodError> {
        let host = self.host()?.clone();
        let ctx = self.ctx();
        let mut out = TensorPoly::zero(ctx);
        for (w, c) in p.terms() {
            let mut acc = TensorPoly::one(ctx);
            for &g in w.letters() {
                let r = self.rho_letter(g)?;
                acc = acc.mul_with(
                    &r,
                    |a, b| self.rws.normal_form_word(&a.concat(b)),
                    |a, b| host.mul_words(a, b),
                );
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Checks that ρ kills both rules, is coassociative and counital on the
    /// generators. Returns the list of failures (empty when all hold).
    pub fn check_coaction(&self) -> Result<Vec<String>, ComodError> {
        let host = self.host()?.clone();
        let ctx = self.ctx();
        let mut failures = Vec::new();
        for rule in self.rws.rules() {
            let lhs = NcPoly::word(ctx, rule.lhs.clone());
            let d = self.rho(&lhs)?.sub(&self.rho(&rule.rhs)?);
            if !d.is_zero() {
                failures.push(format!(
                    "rho does not respect {}",
                    self.rws.display_rule(rule)
                ));
            }
        }
        for g in self.alphabet().letters() {
            let name = self.alphabet().name(g).to_string();
            let r = self.rho_letter(g)?;
            // (ρ ⊗ id)ρ versus (id ⊗ Δ)ρ as three-leg sums
            let mut left: Vec<((Word, Word, Word), Scalar)> = Vec::new();
            let mut right: Vec<((Word, Word, Word), Scalar)> = Vec::new();
            for ((u, h), c) in r.terms() {
                for ((u1, h1), c1) in self.rho(&NcPoly::word(ctx, u.clone()))?.terms() {
                    left.push(((u1.clone(), h1.clone(), h.clone()), c * c1));
                }
                for ((h1, h2), c1) in host.delta_word(h).terms() {
                    right.push(((u.clone(), h1.clone(), h2.clone()), c * c1));
                }
            }
            if collect3(left) != collect3(right) {
                failures.push(format!("rho is not coassociative on {name}"));
            }
            let mut counit = NcPoly::zero(ctx);
            for ((u, h), c) in r.terms() {
                counit.add_term(u.clone(), c * &host.counit_word(h));
            }
            if counit != NcPoly::letter(ctx, g) {
                failures.push(format!("rho is not counital on {name}"));
            }
        }
        Ok(failures)
    }

    /// The graded piece `R_λ` as a comodule over the host.
    pub fn component(&self, deg: &[RfDegree]) -> Result<Comodule, ComodError> {
        let host = self.host()?.clone();
        let ctx = self.ctx();
        let basis = self.component_basis(deg);
        let n = basis.len();
        if n == 0 {
            return Err(ComodError::Shape(format!(
                "component {} is zero",
                show_rf_degree(deg)
            )));
        }
        let mut rows = vec![vec![NcPoly::zero(ctx); n]; n];
        for (i, w) in basis.iter().enumerate() {
            let r = self.rho(&NcPoly::word(ctx, w.clone()))?;
            for ((u, h), c) in r.terms() {
                let j = basis
                    .iter()
                    .position(|b| b == u)
                    .ok_or_else(|| ComodError::NotHomogeneous(self.alphabet().display_word(u).to_string()))?;
                rows[j][i].add_term(h.clone(), c.clone());
            }
        }
        let labels = basis
            .iter()
            .map(|w| self.alphabet().display_word(w).to_string())
            .collect();
        Comodule::with_labels(host, rows, labels)
    }

    /// Ψ on a generator: `x_i ↦ u_{1i}`, `y_i ↦ v_{ni}`.
    fn psi_letter(&self, g: Letter) -> Result<NcPoly, ComodError> {
        let host = self.host()?;
        let i = self.letter_index(g);
        let name = match self.letter_degree(g) {
            RfDegree::Alpha => format!("u1{i}"),
            RfDegree::Beta => format!("v{}{i}", self.n),
        };
        Ok(NcPoly::letter(self.ctx(), host.generator(&name)?))
    }

    pub fn psi(&self, p: &NcPoly) -> Result<NcPoly, ComodError> {
        let host = self.host()?;
        let ctx = self.ctx();
        let mut out = NcPoly::zero(ctx);
        for (w, c) in p.terms() {
            let mut acc = NcPoly::one(ctx);
            for &g in w.letters() {
                acc = host.mul(&acc, &self.psi_letter(g)?);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Verifies that Ψ is well defined (rules map to zero) and colinear on
    /// generators: `(Ψ ⊗ id)ρ = Δ∘Ψ`.
    pub fn check_psi(&self) -> Result<(), ComodError> {
        let host = self.host()?.clone();
        let ctx = self.ctx();
        for rule in self.rws.rules() {
            let image = self
                .psi(&NcPoly::word(ctx, rule.lhs.clone()))?
                .sub(&self.psi(&rule.rhs)?);
            if !image.is_zero() {
                return Err(ComodError::NotColinear {
                    generator: self.rws.display_rule(rule).to_string(),
                    detail: host.show(&image),
                });
            }
        }
        for g in self.alphabet().letters() {
            let r = self.rho_letter(g)?;
            let lhs = r.map_legs(
                |u| self.psi(&NcPoly::word(ctx, u.clone())).expect("host present"),
                |h| NcPoly::word(ctx, h.clone()),
            );
            let rhs = host.delta(&self.psi_letter(g)?);
            if lhs != rhs {
                return Err(ComodError::NotColinear {
                    generator: self.alphabet().name(g).to_string(),
                    detail: host.show_tensor(&lhs.sub(&rhs)),
                });
            }
        }
        Ok(())
    }

    /// `(dim R_λ, rank Ψ(R_λ))`; Ψ is injective on `R_λ` when they agree.
    pub fn psi_rank(&self, deg: &[RfDegree]) -> Result<(usize, usize), ComodError> {
        let basis = self.component_basis(deg);
        let images = basis
            .iter()
            .map(|w| self.psi(&NcPoly::word(self.ctx(), w.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((basis.len(), rank(self.ctx(), images.iter().map(poly_vec))))
    }
}

fn collect3(terms: Vec<((Word, Word, Word), Scalar)>) -> std::collections::BTreeMap<(Word, Word, Word), Scalar> {
    let mut m = std::collections::BTreeMap::new();
    for (k, c) in terms {
        let e = m.remove(&k).map(|e: Scalar| &e + &c).unwrap_or(c);
        if !e.is_zero() {
            m.insert(k, e);
        }
    }
    m
}

/// All multidegrees of length at most `max_len`.
pub fn rf_degrees_up_to(max_len: usize) -> Vec<Vec<RfDegree>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for d in &frontier {
            for x in [RfDegree::Alpha, RfDegree::Beta] {
                let mut e: Vec<RfDegree> = d.clone();
                e.push(x);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
