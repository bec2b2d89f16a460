//! Property checks shared by the invariant suite and the acceptance run. Each returns a
//! description of the first failure.

use std::collections::BTreeMap;

use hopfkit::bounds::{self, Context};
use hopfkit::coalgebra::{
    coradical_filtration, grouplikes, isotypic_component, nichols_projection, p_spaces, wedge, Coalgebra, Coradical,
    NicholsData,
};
use hopfkit::exactmath::linalg::{self, kron, mat_vec, Vector};
use hopfkit::hopf::HopfAlgebra;
use hopfkit::{Scalar, Subspace};

pub type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(msg: impl std::fmt::Display) -> String {
    msg.to_string()
}

/// `S(ab) = S(b)S(a)` and `Δ∘S = (S⊗S)∘τ∘Δ` on basis elements.
pub fn antipode_is_anti(h: &HopfAlgebra) -> Check {
    let n = h.dim();
    let s = h.s().map_err(e)?;
    let basis: Vec<Vector> = (0..n).map(|i| linalg::unit_vec(n, i)).collect();
    let images: Vec<Vector> = basis.iter().map(|b| mat_vec(&s, b)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = mat_vec(&s, &h.mul(&basis[i], &basis[j]));
            ensure(lhs == h.mul(&images[j], &images[i]), || format!("S(b{i} b{j}) ≠ S(b{j}) S(b{i})"))?;
        }
        let d = h.coalgebra.delta(&basis[i]);
        let mut rhs = linalg::zero_vec(n * n);
        for p in 0..n {
            for q in 0..n {
                let c = &d[p * n + q];
                if !c.is_zero() {
                    linalg::axpy(&mut rhs, c, &kron(&images[q], &images[p]));
                }
            }
        }
        ensure(h.coalgebra.delta(&images[i]) == rhs, || format!("Δ S(b{i}) ≠ (S⊗S) τΔ(b{i})"))?;
    }
    Ok(())
}

/// Index of the component equal to the image of each component under `f`.
fn permutation(cor: &Coradical, n: usize, f: impl Fn(&Vector) -> Vector) -> Result<Vec<usize>, String> {
    cor.components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let image = Subspace::new(n, c.subcoalgebra.basis().iter().map(&f).collect());
            cor.components
                .iter()
                .position(|d| d.subcoalgebra == image)
                .ok_or_else(|| format!("image of component {i} is not a component"))
        })
        .collect()
}

fn table_dim(t: &BTreeMap<(usize, usize), usize>, a: usize, b: usize) -> usize {
    t.get(&(a, b)).copied().unwrap_or(0)
}

pub fn nichols(c: &Coalgebra, seed: u64) -> Result<NicholsData, String> {
    p_spaces(c, &nichols_projection(c, seed).map_err(e)?).map_err(e)
}

/// `dim P_1^{τ,γ} = dim P_1^{Sγ,Sτ} = dim P_1^{gτ,gγ} = dim P_1^{τg,γg}`.
pub fn isotypic_symmetries(h: &HopfAlgebra, nd: &NicholsData) -> Check {
    let n = h.dim();
    let cor = &nd.coradical;
    let s = h.s().map_err(e)?;
    let sigma = permutation(cor, n, |v| mat_vec(&s, v))?;
    let t = &nd.isotypic;
    let k = cor.components.len();
    for g in cor.components.iter().filter_map(|c| c.grouplike()) {
        let left = permutation(cor, n, |v| h.mul(g, v))?;
        let right = permutation(cor, n, |v| h.mul(v, g))?;
        for a in 0..k {
            for b in 0..k {
                let d = table_dim(t, a, b);
                let others =
                    [table_dim(t, sigma[b], sigma[a]), table_dim(t, left[a], left[b]), table_dim(t, right[a], right[b])];
                ensure(others.iter().all(|&x| x == d), || format!("P_1^({a},{b}) has dim {d}, images {others:?}"))?;
            }
        }
    }
    Ok(())
}

/// `|G|` divides `dim P_n`, `dim H_n` and `dim H_{0,d}`, and `dim H_1 = dim H_0 + dim P_1`.
pub fn grouplike_divisibility(h: &HopfAlgebra, nd: &NicholsData) -> Check {
    let c = &h.coalgebra;
    let g = grouplikes(c).map_err(e)?.len();
    let filtration = coradical_filtration(c).map_err(e)?;
    for (i, p) in nd.p.iter().enumerate() {
        ensure(p.dim() % g == 0, || format!("|G| = {g} does not divide dim P_{} = {}", i + 1, p.dim()))?;
    }
    for (i, hn) in filtration.iter().enumerate() {
        ensure(hn.dim() % g == 0, || format!("|G| = {g} does not divide dim H_{i} = {}", hn.dim()))?;
    }
    let mut blocks: BTreeMap<usize, usize> = BTreeMap::new();
    for comp in &nd.coradical.components {
        *blocks.entry(comp.d).or_default() += comp.subcoalgebra.dim();
    }
    for (d, dim) in &blocks {
        ensure(dim % g == 0, || format!("|G| = {g} does not divide dim H_(0,{d}) = {dim}"))?;
    }
    let h1 = filtration.get(1).unwrap_or(&filtration[0]).dim();
    let p1 = nd.p.first().map_or(0, Subspace::dim);
    ensure(h1 == filtration[0].dim() + p1, || format!("dim H_1 = {h1} ≠ dim H_0 + dim P_1 = {} + {p1}", filtration[0].dim()))
}

/// The data that must not depend on the lift: `dim P_n` and the isotypic table.
pub type LiftInvariants = (Vec<usize>, BTreeMap<(usize, usize), usize>);

/// `P_n = C_n ∩ I` for every `n`, the isotypic table sums to `dim P_1` and its pieces are
/// sub-bicomodules; returns the lift-independent dimensions.
pub fn nichols_identity(c: &Coalgebra, nd: &NicholsData) -> Result<LiftInvariants, String> {
    let filtration = coradical_filtration(c).map_err(e)?;
    let top = filtration.len().max(nd.p.len()) + 1;
    for k in 1..=top {
        let cn = filtration.get(k).unwrap_or_else(|| filtration.last().unwrap());
        let pn = nd.p.get(k - 1).or(nd.p.last());
        let cap = cn.intersection(&nd.i).map_err(e)?;
        let pn = pn.cloned().unwrap_or_else(|| Subspace::zero(c.dim()));
        ensure(cap == pn, || format!("P_{k} (dim {}) ≠ C_{k} ∩ I (dim {})", pn.dim(), cap.dim()))?;
    }
    let p1 = nd.p.first().map_or(0, Subspace::dim);
    let total: usize = nd.isotypic.values().sum();
    ensure(total == p1, || format!("isotypic table sums to {total}, dim P_1 = {p1}"))?;
    let n = c.dim();
    // functionals f∘π for the coordinate functionals f
    let through_pi: Vec<Vector> = (0..n).map(|r| nd.pi[r].clone()).collect();
    for &(tau, gamma) in nd.isotypic.keys() {
        let comp = isotypic_component(c, nd, tau, gamma).map_err(e)?;
        for x in comp.basis() {
            for f in &through_pi {
                ensure(comp.contains(&c.left_hit(f, x)) && comp.contains(&c.right_hit(x, f)), || {
                    format!("P_1^({tau},{gamma}) is not stable under the hit actions")
                })?;
            }
        }
    }
    Ok((nd.p_dims(), nd.isotypic.clone()))
}

/// `P_n = C_n ∩ I` and identical dimension tables for the lifts `seeds`.
pub fn nichols_across_lifts(c: &Coalgebra, seeds: &[u64]) -> Result<LiftInvariants, String> {
    let mut first: Option<LiftInvariants> = None;
    for &seed in seeds {
        let nd = nichols(c, seed)?;
        let inv = nichols_identity(c, &nd).map_err(|m| format!("seed {seed}: {m}"))?;
        match &first {
            None => first = Some(inv),
            Some(f) => ensure(f == &inv, || format!("seed {seed} gives {inv:?}, seed {} gives {f:?}", seeds[0]))?,
        }
    }
    first.ok_or_else(|| "no seeds".into())
}

/// `kg ∧ C = kg + C + P_1^{g,C}` for every grouplike `g` and simple component `C`.
pub fn wedge_with_grouplike(c: &Coalgebra, nd: &NicholsData) -> Check {
    let n = c.dim();
    let comps = &nd.coradical.components;
    for (tau, gc) in comps.iter().enumerate() {
        let Some(g) = gc.grouplike() else { continue };
        let kg = Subspace::new(n, vec![g.clone()]);
        for (gamma, cc) in comps.iter().enumerate() {
            let lhs = wedge(&kg, &cc.subcoalgebra, c).map_err(e)?;
            let p = isotypic_component(c, nd, tau, gamma).map_err(e)?;
            let rhs = kg.sum(&cc.subcoalgebra).and_then(|s| s.sum(&p)).map_err(e)?;
            ensure(lhs == rhs, || format!("kg ∧ C has dim {}, kg + C + P_1^(g,C) has dim {}", lhs.dim(), rhs.dim()))?;
        }
    }
    Ok(())
}

/// No rule fires against the shape of `h`, with skew-primitives decided on `h` itself.
pub fn soundness(h: &HopfAlgebra) -> Check {
    let shape = bounds::shape_of(h).map_err(e)?;
    let dim = shape.dim;
    let others = bounds::report(dim, false).iter().filter(|r| r.shape.g > 1).all(|r| r.excluded);
    let ctx = Context {
        verified_no_skew: bounds::has_no_nontrivial_skew_primitive(h).map_err(e)?,
        nontrivial_grouplikes_excluded: Some(others),
        ..Context::default()
    };
    let r = bounds::evaluate(&shape, &ctx);
    ensure(!r.excluded, || format!("{} excluded by {:?}", shape, r.reasons))
}

pub fn is_grouplike(c: &Coalgebra, g: &[Scalar]) -> bool {
    c.delta(g) == kron(g, g) && c.epsilon(g).is_one()
}

/// Classifies a relabeled span of `nf` and checks tag, square class, witness and
/// transposition symmetry.
pub fn relabeled_classification(nf: &super::NormalForm, seed: u64) -> Check {
    use super::NormalForm;
    use hopfkit::matrixlike::{classify, square_class_label, validate_span, MatrixLikeTag};
    let span = super::relabeled_span(nf, seed);
    ensure(validate_span(&span).is_ok(), || format!("{nf:?}/{seed}: generated span is not matrix-like"))?;
    let class = classify(&span).map_err(e)?;
    ensure(super::witness_is_embedding(&span.ambient, &class), || format!("{nf:?}/{seed}: witness fails"))?;
    match (nf, &class.tag) {
        (NormalForm::C3, MatrixLikeTag::C3) => {
            let g = grouplikes(&span.ambient).map_err(e)?;
            ensure(class.witness[..2].iter().all(|w| g.contains(w)), || format!("C3/{seed}: witness grouplikes"))?;
        }
        (NormalForm::Full4, MatrixLikeTag::Full4) | (NormalForm::Point1, MatrixLikeTag::Point1) => {}
        (NormalForm::C2(a), MatrixLikeTag::C2(b)) => {
            let (la, lb) = (square_class_label(a, 1).map_err(e)?, square_class_label(b, 1).map_err(e)?);
            ensure(la == lb, || format!("C2/{seed}: {b} (class {lb}) not in the class of {a} (class {la})"))?;
        }
        _ => return Err(format!("{nf:?}/{seed}: classified as {}", class.tag)),
    }
    let t = classify(&span.transposed()).map_err(e)?;
    ensure(std::mem::discriminant(&t.tag) == std::mem::discriminant(&class.tag), || {
        format!("{nf:?}/{seed}: transposed span classified as {}", t.tag)
    })
}

/// Runs the stable-coalgebra search on a swapped pair of `h` and checks the outcome
/// matches the fixture.
pub fn swap_outcome(case: &super::SwapCase, h: &HopfAlgebra) -> Check {
    use super::SwapCase;
    use hopfkit::exactmath::scalar_is_square;
    use hopfkit::hopf::{s_stable, StableOutcome};
    use hopfkit::matrixlike::{validate_span, MatrixLikeSpan, MatrixLikeTag};
    let out = super::search_swapped_pair(h).map_err(e)?;
    match (case, out) {
        (SwapCase::Full, StableOutcome::Found { basis, subspace, .. }) => {
            ensure(subspace.dim() == 4, || "stable subcoalgebra is not 4-dimensional".into())?;
            ensure(h.coalgebra.is_subcoalgebra(&subspace), || "not a subcoalgebra".into())?;
            ensure(s_stable(h, &subspace).map_err(e)?, || "not S-stable".into())?;
            let span = MatrixLikeSpan::new(h.coalgebra.clone(), basis).map_err(e)?;
            ensure(validate_span(&span).is_ok(), || "returned basis is not matrix-like".into())
        }
        (SwapCase::C3, StableOutcome::GrouplikeForced { class, grouplikes, .. }) => {
            ensure(class.tag == MatrixLikeTag::C3, || format!("expected C3, got {}", class.tag))?;
            ensure(grouplikes.len() >= 2, || "fewer than two grouplikes".into())?;
            ensure(grouplikes.iter().all(|g| is_grouplike(&h.coalgebra, g) && g != h.unit()), || {
                "forced grouplikes are wrong".into()
            })
        }
        (SwapCase::C2(a), StableOutcome::GrouplikeForced { class, grouplikes, .. }) => {
            let MatrixLikeTag::C2(b) = &class.tag else { return Err(format!("expected C2, got {}", class.tag)) };
            ensure(scalar_is_square(&(b / a), 1).map_err(e)?.is_some(), || format!("{b} vs {a}"))?;
            ensure(grouplikes.iter().all(|g| is_grouplike(&h.coalgebra, g)), || "not grouplike".into())?;
            ensure(grouplikes.iter().any(|g| g != h.unit()), || "no nontrivial grouplike".into())
        }
        (SwapCase::Unit, StableOutcome::Contradiction(w)) => {
            ensure(w.identities.iter().all(|(_, ok)| *ok), || format!("{:?}", w.identities))?;
            ensure(w.x_primitive && w.is_contradiction(), || "derivation does not close".into())
        }
        (case, out) => Err(format!("{case:?}: unexpected {out:?}")),
    }
}
