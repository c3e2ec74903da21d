use super::*;

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows)
}

fn vec_i(entries: &[i64]) -> IntVector {
    IntVector::from_i64s(entries)
}

/// Deterministic xorshift so the property checks need no external crate here.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }
}

#[test]
fn smith_diag_2_3() {
    let snf = smith_normal_form(&mat(&[&[2, 0], &[0, 3]]));
    assert_eq!(snf.diagonal(), vec![int(1), int(6)]);
}

#[test]
fn smith_identity_is_fixed() {
    let a = IntMatrix::identity(3);
    let snf = smith_normal_form(&a);
    assert!(snf.d.is_identity());
    assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
}

#[test]
fn smith_gcd_row() {
    // gcd(6, 10, 15) = 1 by the extended gcd: 6 + 10 - 15 = 1
    assert_eq!(int(6).gcd(&int(10)).gcd(&int(15)), int(1));
    let snf = smith_normal_form(&mat(&[&[6, 10, 15]]));
    assert_eq!(snf.d, mat(&[&[1, 0, 0]]));
}

#[test]
fn smith_properties_random() {
    let mut rng = Rng(0x5eed_cafe);
    for _ in 0..120 {
        let rows = rng.range(1, 6) as usize;
        let cols = rng.range(1, 6) as usize;
        let mut a = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a.set(i, j, int(rng.range(-5, 5)));
            }
        }
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d, "UAV = D for\n{}", a);
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        assert!(snf.u.mul(&snf.u_inv).is_identity());
        assert!(snf.v.mul(&snf.v_inv).is_identity());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "chain broken: {:?}", diag);
            } else {
                assert!(w[1].is_zero());
            }
        }
        // off-diagonal zero
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero());
                }
            }
        }
    }
}

#[test]
fn smith_deterministic() {
    let a = mat(&[&[4, -2, 7], &[0, 3, 3], &[5, 5, 5]]);
    let s1 = smith_normal_form(&a);
    let s2 = smith_normal_form(&a);
    assert_eq!(s1.u, s2.u);
    assert_eq!(s1.v, s2.v);
    assert_eq!(s1.d, s2.d);
}

#[test]
fn part_of_basis_examples() {
    assert!(is_part_of_basis(&[vec_i(&[1, 0])], 2).unwrap());
    assert!(!is_part_of_basis(&[vec_i(&[2, 0])], 2).unwrap());
    assert!(is_part_of_basis(&[vec_i(&[1, 0, 0]), vec_i(&[1, 1, 1])], 3).unwrap());
    assert!(is_part_of_basis(&[], 2).unwrap());
    assert_eq!(
        is_part_of_basis(&[vec_i(&[1]), vec_i(&[0])], 1),
        Err(LatticeError::RankError(2, 1))
    );
}

#[test]
fn complete_to_basis_examples() {
    let b = complete_to_basis(&[vec_i(&[1, 0])], 2).unwrap();
    assert_eq!(b, IntMatrix::identity(2));

    let b = complete_to_basis(&[vec_i(&[1, 1])], 2).unwrap();
    assert_eq!(b.column(0), vec_i(&[1, 1]));
    assert!(b.det().abs().is_one());

    assert!(matches!(
        complete_to_basis(&[vec_i(&[2, 0])], 2),
        Err(LatticeError::NotExtendableError(2))
    ));
}

#[test]
fn complete_to_basis_matches_membership() {
    let mut rng = Rng(0xbead_0005);
    for _ in 0..100 {
        let n = rng.range(1, 4) as usize;
        let k = rng.range(0, n as i64) as usize;
        let vs: Vec<IntVector> = (0..k)
            .map(|_| IntVector::new((0..n).map(|_| int(rng.range(-4, 4))).collect()))
            .collect();
        let part = is_part_of_basis(&vs, n).unwrap();
        match complete_to_basis(&vs, n) {
            Ok(b) => {
                assert!(part);
                assert!(b.det().abs().is_one());
                for (j, v) in vs.iter().enumerate() {
                    assert_eq!(&b.column(j), v);
                }
            }
            Err(_) => assert!(!part),
        }
    }
}

#[test]
fn cokernel_cp2_relations() {
    let p = cokernel_presentation(&mat(&[&[1, 0, -1], &[0, 1, -1]]));
    assert_eq!(p.free_rank(), 1);
    let c1 = p.canonical_generator(0);
    let c2 = p.canonical_generator(1);
    let c3 = p.canonical_generator(2);
    assert_eq!(c1, c2);
    assert_eq!(c2, c3);
    assert!(!c1.is_zero());
}

#[test]
fn cokernel_empty_relations() {
    let p = cokernel_presentation(&IntMatrix::zeros(0, 2));
    assert_eq!(p.free_rank(), 2);
    assert_eq!(p.canonical(&vec_i(&[3, -4])), vec_i(&[3, -4]));
}

#[test]
fn cokernel_torsion() {
    let p = cokernel_presentation(&mat(&[&[2, 0]]));
    assert!(p.canonical(&vec_i(&[2, 0])).is_zero());
    assert!(!p.canonical(&vec_i(&[1, 0])).is_zero());
    assert!(!p.is_torsion_free());
}

#[test]
fn cokernel_canonical_properties() {
    let mut rng = Rng(0xc0c0_000a);
    for _ in 0..60 {
        let rows = rng.range(0, 4) as usize;
        let cols = rng.range(1, 5) as usize;
        let mut r = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                r.set(i, j, int(rng.range(-4, 4)));
            }
        }
        let p = cokernel_presentation(&r);
        // canonical of every relation row is zero
        for i in 0..rows {
            assert!(p.canonical(&r.row(i)).is_zero(), "row not killed\n{}", r);
        }
        // idempotent
        let v = IntVector::new((0..cols).map(|_| int(rng.range(-9, 9))).collect());
        let c = p.canonical(&v);
        assert_eq!(p.canonical(&c), c);
        // Z-linear modulo relations
        let w = IntVector::new((0..cols).map(|_| int(rng.range(-9, 9))).collect());
        let lhs = p.canonical(&v.add(&w));
        let rhs = p.canonical(&p.canonical(&v).add(&p.canonical(&w)));
        assert_eq!(lhs, rhs);
        // free rank consistent with the Smith rank
        let rank = smith_normal_form(&r).rank();
        assert_eq!(p.free_rank(), cols - rank);
    }
}

#[test]
fn quotient_coordinate_axis() {
    let q = quotient_by_primitive(&vec_i(&[0, 0, 1])).unwrap();
    assert_eq!(q, mat(&[&[1, 0, 0], &[0, 1, 0]]));
}

#[test]
fn quotient_general() {
    let v = vec_i(&[1, 1]);
    let q = quotient_by_primitive(&v).unwrap();
    assert!(q.mul_vec(&v).is_zero());
    // surjectivity: Smith diagonal of Q is all ones
    let snf = smith_normal_form(&q);
    assert_eq!(snf.rank(), 1);
    assert!(snf.diagonal().iter().all(num_traits::One::is_one));
}

#[test]
fn quotient_rejects_imprimitive() {
    assert!(matches!(
        quotient_by_primitive(&vec_i(&[2, 0])),
        Err(LatticeError::NotPrimitiveError(_))
    ));
}

#[test]
fn quotient_kernel_is_exactly_v() {
    let mut rng = Rng(0xfade_000d);
    let mut tried = 0;
    while tried < 60 {
        let n = rng.range(1, 5) as usize;
        let v = IntVector::new((0..n).map(|_| int(rng.range(-5, 5))).collect());
        if !v.is_primitive() {
            continue;
        }
        tried += 1;
        let q = quotient_by_primitive(&v).unwrap();
        assert!(q.mul_vec(&v).is_zero());
        // Smith form all ones at full rank: Q is surjective with rank n-1,
        // so its kernel is a saturated rank-1 lattice containing the
        // primitive v, hence exactly Zv.
        let snf = smith_normal_form(&q);
        assert_eq!(snf.rank(), n - 1, "rank defect for v = {}", v);
        assert!(snf.diagonal().iter().all(num_traits::One::is_one));
    }
}

#[test]
fn unimodular_inverse() {
    let m = mat(&[&[2, 1], &[1, 1]]);
    let inv = inverse_unimodular(&m);
    assert!(m.mul(&inv).is_identity());
}

#[test]
fn bareiss_determinant() {
    assert_eq!(mat(&[&[2, 0], &[0, 3]]).det(), int(6));
    assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(), int(-1));
    assert_eq!(IntMatrix::identity(0).det(), int(1));
    assert_eq!(
        mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).det(),
        int(-3)
    );
}
