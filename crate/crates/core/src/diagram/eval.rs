use crate::basis::{Letter, Vector};
use crate::error::{Error, Result};
use crate::multimap::MultiMap;
use crate::report::{Check, Counterexample, Formulation, Report};
use crate::scalar::{Field, Scalar};
use crate::structures::{AInfinityAlgebra, InfinityInnerProduct};
use crate::word::for_each_tuple;

use super::faces::enumerate_faces;
use super::{Diagram, Tree, DEFAULT_BOUND};

/// Calls `f` on every choice of one term from each vector, with the product
/// of the coefficients.
fn for_each_term(args: &[Vector], field: Field, mut f: impl FnMut(&[Letter], &Scalar)) {
    let terms: Vec<Vec<(Letter, &Scalar)>> = args.iter().map(|v| v.iter().collect()).collect();
    let sizes: Vec<usize> = terms.iter().map(Vec::len).collect();
    if sizes.contains(&0) {
        return;
    }
    let mut letters = vec![0; args.len()];
    for_each_tuple(&sizes, |idx| {
        let mut c = field.one();
        for (p, &i) in idx.iter().enumerate() {
            let (x, coeff) = terms[p][i as usize];
            letters[p] = x;
            c = &c * coeff;
        }
        f(&letters, &c);
    });
}

fn apply_map(map: Option<&MultiMap>, args: &[Vector], field: Field) -> Vector {
    let mut out = Vector::zero();
    let Some(map) = map else {
        return out;
    };
    for_each_term(args, field, |x, c| {
        if let Some(v) = map.apply(x) {
            out.add_scaled(v, c);
        }
    });
    out
}

fn tree_value(t: &Tree, alg: &AInfinityAlgebra, leaves: &[Vector]) -> Vector {
    match t {
        Tree::Leaf(i) => leaves[*i as usize].clone(),
        Tree::Node(children) => {
            let args: Vec<Vector> = children.iter().map(|c| tree_value(c, alg, leaves)).collect();
            apply_map(alg.operation(children.len()), &args, alg.field())
        }
    }
}

fn require_mod_two(field: Field) -> Result<()> {
    if field != Field::ModTwo {
        return Err(Error::FieldRequired(field.name().into()));
    }
    Ok(())
}

/// Evaluates a diagram with leaf `i` fed the vector `leaves[i]`: trees
/// compose the operations `m_j`, the circle applies `⟨…⟩_{r,s}`.
pub fn evaluate_vectors(
    d: &Diagram,
    alg: &AInfinityAlgebra,
    ip: &InfinityInnerProduct,
    leaves: &[Vector],
) -> Result<Scalar> {
    require_mod_two(alg.field())?;
    if leaves.len() != d.leaf_count() {
        return Err(Error::Arity(format!(
            "{d} has {} leaves, got {} inputs",
            d.leaf_count(),
            leaves.len()
        )));
    }
    let (r, s) = d.shape();
    let args: Vec<Vector> = d.slots().iter().map(|t| tree_value(t, alg, leaves)).collect();
    let mut total = alg.field().zero();
    for_each_term(&args, alg.field(), |x, c| {
        total += &(c * &ip.value(r, s, x));
    });
    Ok(total)
}

/// [`evaluate_vectors`] on basis elements.
pub fn evaluate(d: &Diagram, alg: &AInfinityAlgebra, ip: &InfinityInnerProduct, inputs: &[Letter]) -> Result<Scalar> {
    let field = alg.field();
    let leaves: Vec<Vector> = inputs.iter().map(|&x| Vector::basis_element(x, field)).collect();
    evaluate_vectors(d, alg, ip, &leaves)
}

/// For every cell `Γ` of the `(k,l)` complex and every basis tuple `x`,
/// compares the evaluation of `dΓ` at `x` with `Σ_i Γ(x_1, …, ∂x_i, …, x_N)`.
pub fn naturality_check(k: usize, l: usize, alg: &AInfinityAlgebra, ip: &InfinityInnerProduct) -> Result<Report> {
    require_mod_two(alg.field())?;
    let fc = enumerate_faces(k, l, DEFAULT_BOUND)?;
    let basis = alg.basis();
    let field = alg.field();
    let n = k + l + 2;
    let mut tuples = Vec::new();
    for_each_tuple(&vec![basis.len(); n], |t| tuples.push(t.to_vec()));
    let d1 = alg.operation(1);
    let mut check = Check::new("d∘eval = eval∘∂̃", Formulation::Combinatorial);
    for cell in fc.cells() {
        let boundary = cell.differential();
        for x in &tuples {
            check.evaluated += 1;
            let mut lhs = field.zero();
            for (term, _) in boundary.iter() {
                lhs += &evaluate(term, alg, ip, x)?;
            }
            let mut rhs = field.zero();
            let leaves: Vec<Vector> = x.iter().map(|&a| Vector::basis_element(a, field)).collect();
            for i in 0..n {
                let mut moved = leaves.clone();
                moved[i] = apply_map(d1, &leaves[i..=i], field);
                rhs += &evaluate_vectors(cell, alg, ip, &moved)?;
            }
            if !lhs.is_zero() || !rhs.is_zero() {
                check.mark_active(cell.degree() as usize);
            }
            if lhs != rhs {
                check.mark_failing(cell.degree() as usize);
                check.fail(Counterexample {
                    tuple: std::iter::once(cell.to_string())
                        .chain(x.iter().map(|&a| basis.label(a).to_string()))
                        .collect(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    Ok(Report::new(format!("naturality ({k},{l}) on {}", ip.name()), vec![check], None))
}
