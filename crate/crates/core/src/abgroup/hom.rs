use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::group::FGAbelianGroup;
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, Lattice};
use crate::error::{Error, Result};

/// Homomorphism between finitely generated abelian groups, given on the
/// normal-form generators: column `j` is the image of domain generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    domain: FGAbelianGroup,
    codomain: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates the shape and that torsion generators go to elements of
    /// compatible order, then reduces torsion rows into `[0, d)`.
    pub fn new(domain: FGAbelianGroup, codomain: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for a map {domain} -> {codomain}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        for j in 0..matrix.cols() {
            let Some(order) = domain.order_of_generator(j) else {
                continue;
            };
            let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * order).collect();
            if !codomain.is_zero_element(&image) {
                return Err(Error::NotWellDefined(format!(
                    "generator {j} has order {order} but its image does not"
                )));
            }
        }
        let mut matrix = matrix;
        for (k, d) in codomain.torsion().iter().enumerate() {
            let r = codomain.rank() + k;
            for c in 0..matrix.cols() {
                let v = matrix.get(r, c).mod_floor(d);
                matrix.set(r, c, v);
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FGAbelianGroup, codomain: FGAbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(codomain.generator_count(), domain.generator_count());
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(group: FGAbelianGroup) -> Self {
        let n = group.generator_count();
        GroupHom {
            domain: group.clone(),
            codomain: group,
            matrix: IntMatrix::identity(n),
        }
    }

    /// `Z^n -> Z^m` from a plain integer matrix.
    pub fn between_free(matrix: IntMatrix) -> Self {
        GroupHom {
            domain: FGAbelianGroup::free(matrix.cols()),
            codomain: FGAbelianGroup::free(matrix.rows()),
            matrix,
        }
    }

    pub fn domain(&self) -> &FGAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FGAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.codomain.reduce(&mut y);
        y
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.codomain != other.domain {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        let m = other.matrix.checked_mul(&self.matrix)?;
        GroupHom::new(self.domain.clone(), other.codomain.clone(), m)
    }

    pub fn negated(&self) -> GroupHom {
        let m = self.matrix.scale(&BigInt::from(-1));
        GroupHom::new(self.domain.clone(), self.codomain.clone(), m).expect("negation preserves well-definedness")
    }

    /// `[M | R_codomain]`: the lattice `im M + relations` in codomain coordinates.
    fn image_with_relations(&self) -> IntMatrix {
        self.matrix
            .hstack(&self.codomain.relation_matrix())
            .expect("row counts agree")
    }

    /// Lifted kernel `{x in Z^n : M x ∈ relations of the codomain}`.
    fn kernel_lattice(&self) -> Lattice {
        let n = self.domain.generator_count();
        Lattice::kernel_of(&self.image_with_relations()).project_leading(n)
    }
}

/// `L / R` for a lattice `L` and a sublattice spanned by `rels`.
#[derive(Debug, Clone)]
struct Subquotient {
    pub group: FGAbelianGroup,
    /// Ambient representatives of the normal-form generators (one column each).
    pub reps: IntMatrix,
    /// Normal-form coordinates from lattice coordinates (unreduced).
    pub proj: IntMatrix,
}

impl Subquotient {
    pub fn new(lattice: Lattice, rels: &IntMatrix) -> Result<Subquotient> {
        let c = lattice
            .coords_of_columns(rels)
            .ok_or_else(|| Error::InvalidInput("relations leave the lattice".into()))?;
        let snf = smith_normal_form(&c);
        let t = lattice.dim();
        let invariants = snf.invariants();
        let torsion_idx: Vec<usize> = (0..snf.rank).filter(|&i| invariants[i] > BigInt::from(1)).collect();
        let order: Vec<usize> = (snf.rank..t).chain(torsion_idx.iter().copied()).collect();
        let group = FGAbelianGroup::from_invariants(
            t - snf.rank,
            torsion_idx.iter().map(|&i| invariants[i].clone()).collect(),
        )?;
        let reps = lattice.basis() * &snf.u_inv.select_columns(&order);
        let proj = snf.u.select_rows(&order);
        Ok(Subquotient { group, reps, proj })
    }
}

/// Reduce the rows of `m` belonging to torsion generators of `g`.
fn reduce_rows(g: &FGAbelianGroup, m: &mut IntMatrix) {
    for (k, d) in g.torsion().iter().enumerate() {
        let r = g.rank() + k;
        for c in 0..m.cols() {
            let v = m.get(r, c).mod_floor(d);
            m.set(r, c, v);
        }
    }
}

/// Cokernel of `f` and the projection from the codomain onto it.
pub fn cokernel(f: &GroupHom) -> Result<(FGAbelianGroup, GroupHom)> {
    let m = f.codomain.generator_count();
    let sq = Subquotient::new(Lattice::full(m), &f.image_with_relations())?;
    let mut proj = sq.proj.clone();
    reduce_rows(&sq.group, &mut proj);
    let projection = GroupHom::new(f.codomain.clone(), sq.group.clone(), proj)?;
    Ok((sq.group, projection))
}

/// Kernel of `f` and its inclusion into the domain.
pub fn kernel(f: &GroupHom) -> Result<(FGAbelianGroup, GroupHom)> {
    let sq = Subquotient::new(f.kernel_lattice(), &f.domain.relation_matrix())?;
    let mut reps = sq.reps.clone();
    reduce_rows(&f.domain, &mut reps);
    let inclusion = GroupHom::new(sq.group.clone(), f.domain.clone(), reps)?;
    Ok((sq.group, inclusion))
}

/// Image of `f` as an abstract group.
pub fn image(f: &GroupHom) -> Result<FGAbelianGroup> {
    let span = Lattice::span(&f.image_with_relations());
    Ok(Subquotient::new(span, &f.codomain.relation_matrix())?.group)
}

/// `ker g / im f` for composable `f: A -> B`, `g: B -> C` with `g ∘ f = 0`.
pub fn homology(f: &GroupHom, g: &GroupHom) -> Result<FGAbelianGroup> {
    Ok(homology_subquotient(f, g)?.group)
}

fn homology_subquotient(f: &GroupHom, g: &GroupHom) -> Result<Subquotient> {
    if f.codomain != g.domain {
        return Err(Error::Shape(format!(
            "homology of {} -> {} -> {}: middle groups differ ({})",
            f.domain, f.codomain, g.codomain, g.domain
        )));
    }
    if !f.then(g)?.is_zero() {
        return Err(Error::InvalidInput("composite of consecutive maps is not zero".into()));
    }
    Subquotient::new(g.kernel_lattice(), &f.image_with_relations())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    #[test]
    fn scaling_by_n() {
        for n in [2i64, 5, -7] {
            let f = GroupHom::between_free(IntMatrix::from_i64(&[&[n]]));
            let (k, inc) = kernel(&f).unwrap();
            assert!(k.is_trivial());
            assert!(inc.then(&f).unwrap().is_zero());
            let (c, proj) = cokernel(&f).unwrap();
            assert_eq!(c, z(n));
            assert!(f.then(&proj).unwrap().is_zero());
        }
    }

    #[test]
    fn sphere_pushforward() {
        // (m, n) -> (m - n, N n)
        let f = GroupHom::between_free(IntMatrix::from_i64(&[&[1, -1], &[0, 6]]));
        assert!(kernel(&f).unwrap().0.is_trivial());
        assert_eq!(cokernel(&f).unwrap().0, z(6));

        let f0 = GroupHom::between_free(IntMatrix::from_i64(&[&[1, -1], &[0, 0]]));
        assert_eq!(kernel(&f0).unwrap().0, FGAbelianGroup::free(1));
        assert_eq!(cokernel(&f0).unwrap().0, FGAbelianGroup::free(1));
    }

    #[test]
    fn connecting_map_with_torsion_domain() {
        // Z ⊕ Z_8 -> Z, (n, m) -> N n
        let dom = FGAbelianGroup::from_factors(1, &[BigInt::from(8)]);
        let f = GroupHom::new(dom, FGAbelianGroup::free(1), IntMatrix::from_i64(&[&[3, 0]])).unwrap();
        let (k, inc) = kernel(&f).unwrap();
        assert_eq!(k, z(8));
        assert!(inc.then(&f).unwrap().is_zero());
        assert_eq!(cokernel(&f).unwrap().0, z(3));
    }

    #[test]
    fn cup_with_eta_kernel() {
        // (a, b) -> L b + N a with L = 4, N = 6
        let f = GroupHom::between_free(IntMatrix::from_i64(&[&[6, 4]]));
        assert_eq!(kernel(&f).unwrap().0, FGAbelianGroup::free(1));
        assert_eq!(cokernel(&f).unwrap().0, z(2));
    }

    #[test]
    fn ill_defined_map_rejected() {
        // Z_4 -> Z_6 sending the generator to 1 is not well defined.
        let r = GroupHom::new(z(4), z(6), IntMatrix::from_i64(&[&[1]]));
        assert!(matches!(r, Err(Error::NotWellDefined(_))));
        // Z_4 -> Z sending it anywhere nonzero neither.
        let r = GroupHom::new(z(4), FGAbelianGroup::free(1), IntMatrix::from_i64(&[&[2]]));
        assert!(r.is_err());
        // Z_4 -> Z_6, 1 -> 3 is fine (4*3 = 12 = 0 mod 6).
        assert!(GroupHom::new(z(4), z(6), IntMatrix::from_i64(&[&[3]])).is_ok());
    }

    #[test]
    fn torsion_to_torsion_kernel_and_cokernel() {
        // Z_4 -> Z_6, 1 -> 3: image {0,3}, kernel {0,2}
        let f = GroupHom::new(z(4), z(6), IntMatrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(kernel(&f).unwrap().0, z(2));
        assert_eq!(cokernel(&f).unwrap().0, z(3));
        assert_eq!(image(&f).unwrap(), z(2));
    }

    #[test]
    fn homology_of_complex() {
        // Z --2--> Z --0--> Z : ker/im = Z_2
        let f = GroupHom::between_free(IntMatrix::from_i64(&[&[2]]));
        let g = GroupHom::between_free(IntMatrix::from_i64(&[&[0]]));
        assert_eq!(homology(&f, &g).unwrap(), z(2));
        let bad = GroupHom::between_free(IntMatrix::from_i64(&[&[1]]));
        assert!(homology(&f, &bad).is_err());
    }
}
