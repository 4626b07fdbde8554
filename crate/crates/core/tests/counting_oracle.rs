//! Cross-checks the stratified enumerator against a quadruple-loop scan that
//! filters on nothing but the definitions. The scan is deliberately dumb: if
//! the two ever disagree, the bug is in the clever side.

use sl2free::{count_c_bounded, count_fixed_trace, enumerate_fixed_trace};
use sl2free::{BallSpec, Mat2, Norm, SubgroupKind, SubgroupSpec};

fn key(m: &Mat2) -> (i64, i64, i64, i64) {
    (
        m.a().to_i64().unwrap(),
        m.b().to_i64().unwrap(),
        m.c().to_i64().unwrap(),
        m.d().to_i64().unwrap(),
    )
}

/// Membership by raw congruences, written from the definitions rather than
/// through `Mat2::member`.
fn in_subgroup(a: i64, b: i64, c: i64, d: i64, kind: SubgroupKind, q: i64) -> bool {
    match kind {
        SubgroupKind::Full => true,
        SubgroupKind::Gamma0 => c.rem_euclid(q) == 0,
        SubgroupKind::Gamma1 => {
            c.rem_euclid(q) == 0 && (a - 1).rem_euclid(q) == 0 && (d - 1).rem_euclid(q) == 0
        }
        SubgroupKind::Gamma => {
            c.rem_euclid(q) == 0
                && b.rem_euclid(q) == 0
                && (a - 1).rem_euclid(q) == 0
                && (d - 1).rem_euclid(q) == 0
        }
    }
}

/// Operator norm <= x through positive-semidefiniteness of x^2 I - A^T A,
/// checked via its trace and determinant. An independent derivation from the
/// inequality used by `Mat2::in_op_ball`.
fn op_norm_at_most(a: i64, b: i64, c: i64, d: i64, x: i64) -> bool {
    let (a, b, c, d, x) = (a as i128, b as i128, c as i128, d as i128, x as i128);
    let g11 = a * a + c * c;
    let g22 = b * b + d * d;
    let g12 = a * b + c * d;
    let m11 = x * x - g11;
    let m22 = x * x - g22;
    m11 + m22 >= 0 && m11 * m22 - g12 * g12 >= 0
}

fn scan(x: i64, kind: SubgroupKind, q: i64, norm: Norm, c_nonzero: bool) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in -x..=x {
        for b in -x..=x {
            for c in -x..=x {
                for d in -x..=x {
                    if a * d - b * c != 1 {
                        continue;
                    }
                    if c_nonzero && c == 0 {
                        continue;
                    }
                    if !in_subgroup(a, b, c, d, kind, q) {
                        continue;
                    }
                    if norm == Norm::Operator && !op_norm_at_most(a, b, c, d, x) {
                        continue;
                    }
                    out.push((a, b, c, d));
                }
            }
        }
    }
    out
}

fn spec_for(x: i64, kind: SubgroupKind, q: i64, norm: Norm, c_nonzero: bool) -> BallSpec {
    let sub = SubgroupSpec::new(kind, q).unwrap();
    BallSpec::new(x, sub, norm, c_nonzero).unwrap()
}

#[test]
fn stratified_enumeration_matches_plain_scan() {
    let kinds = [
        SubgroupKind::Full,
        SubgroupKind::Gamma0,
        SubgroupKind::Gamma1,
        SubgroupKind::Gamma,
    ];
    for x in [1i64, 2, 3, 5, 8, 12] {
        for q in [1i64, 2, 3] {
            if q > x {
                continue;
            }
            for kind in kinds {
                for norm in [Norm::Height, Norm::Operator] {
                    for c_nonzero in [false, true] {
                        let spec = spec_for(x, kind, q, norm, c_nonzero);
                        let mut want = scan(x, kind, q, norm, c_nonzero);
                        let mut got: Vec<_> = spec.iter().map(|m| key(&m)).collect();
                        assert_eq!(
                            spec.count(),
                            want.len() as u128,
                            "count x={x} q={q} {kind:?} {norm:?} c!=0:{c_nonzero}"
                        );
                        assert_eq!(got.len(), want.len());
                        // Same set, no duplicates.
                        let n = got.len();
                        got.sort_unstable();
                        got.dedup();
                        assert_eq!(got.len(), n, "enumerator repeated a matrix");
                        want.sort_unstable();
                        assert_eq!(got, want, "x={x} q={q} {kind:?} {norm:?} c!=0:{c_nonzero}");
                    }
                }
            }
        }
    }
}

#[test]
fn c_bounded_counts_match_plain_scan() {
    for q in [1i64, 2, 3] {
        for x in [3i64, 8] {
            let all = scan(x, SubgroupKind::Gamma0, q, Norm::Height, true);
            for y in 1..=x {
                let want = all.iter().filter(|&&(_, _, c, _)| c.abs() <= y).count();
                assert_eq!(
                    count_c_bounded(q, x, y).unwrap(),
                    want as u128,
                    "q={q} x={x} y={y}"
                );
            }
        }
    }
}

#[test]
fn fixed_trace_matches_plain_scan() {
    for q in [1i64, 2, 3] {
        for x in [3i64, 8] {
            let all = scan(x, SubgroupKind::Gamma0, q, Norm::Height, false);
            for t in -(2 * x)..=(2 * x) {
                let mut want: Vec<_> = all
                    .iter()
                    .copied()
                    .filter(|&(a, _, _, d)| a + d == t)
                    .collect();
                want.sort_unstable();
                assert_eq!(
                    count_fixed_trace(t, x, q).unwrap(),
                    want.len() as u128,
                    "t={t} x={x} q={q}"
                );
                let mut got: Vec<_> = enumerate_fixed_trace(t, x, q)
                    .unwrap()
                    .iter()
                    .map(key)
                    .collect();
                got.sort_unstable();
                assert_eq!(got, want, "t={t} x={x} q={q}");
            }
        }
    }
}

/// Counts pinned by an implementation in another language. Large enough that
/// the quadruple loop can't reach them; they guard the stratified counter at
/// scale.
#[test]
fn pinned_reference_counts() {
    assert_eq!(BallSpec::full_height(1).unwrap().count(), 20);
    assert_eq!(BallSpec::full_height(2).unwrap().count(), 52);
    assert_eq!(BallSpec::full_height(3).unwrap().count(), 116);
    assert_eq!(BallSpec::full_height(10).unwrap().count(), 1012);
    assert_eq!(BallSpec::full_height(1000).unwrap().count(), 9_734_132);

    let op = |x| {
        BallSpec::new(x, SubgroupSpec::full(), Norm::Operator, false)
            .unwrap()
            .count()
    };
    assert_eq!(op(1), 4);
    assert_eq!(op(100), 60_260);

    let g0 = |q, x| {
        BallSpec::new(x, SubgroupSpec::gamma0(q).unwrap(), Norm::Height, false)
            .unwrap()
            .count()
    };
    assert_eq!(g0(1, 50), 24_756);
    assert_eq!(g0(2, 50), 8_262);
    assert_eq!(g0(5, 50), 4_138);
    assert_eq!(g0(10, 50), 1_458);
    assert_eq!(g0(1, 100), 97_396);
    assert_eq!(g0(2, 100), 32_510);
    assert_eq!(g0(5, 100), 16_366);
    assert_eq!(g0(10, 100), 5_538);
    assert_eq!(g0(1, 200), 391_412);
    assert_eq!(g0(2, 200), 130_478);
    assert_eq!(g0(5, 200), 65_286);
    assert_eq!(g0(10, 200), 22_138);
    assert_eq!(g0(1, 400), 1_557_684);
    assert_eq!(g0(2, 400), 519_402);
    assert_eq!(g0(5, 400), 260_190);
    assert_eq!(g0(10, 400), 87_014);
}

/// Inversion is a bijection of every ball here: it fixes the height, fixes
/// both singular values, and preserves each congruence condition.
#[test]
fn inversion_is_an_involution_of_the_ball() {
    let specs = [
        spec_for(15, SubgroupKind::Gamma0, 2, Norm::Height, true),
        spec_for(15, SubgroupKind::Gamma1, 3, Norm::Height, false),
        spec_for(15, SubgroupKind::Full, 1, Norm::Operator, false),
        spec_for(15, SubgroupKind::Gamma, 2, Norm::Height, true),
    ];
    for spec in &specs {
        let mut ball: Vec<_> = spec.iter().map(|m| key(&m)).collect();
        let mut inv: Vec<_> = spec.iter().map(|m| key(&m.inverse())).collect();
        ball.sort_unstable();
        inv.sort_unstable();
        assert_eq!(ball, inv);
    }
}

/// Every yielded matrix really satisfies its spec, at a radius where the
/// quadruple loop would already be slow.
#[test]
fn stream_respects_spec_at_larger_radius() {
    let spec = spec_for(60, SubgroupKind::Gamma1, 4, Norm::Operator, true);
    let mut n = 0u128;
    for m in spec.iter() {
        assert!(m.member(spec.subgroup()));
        assert!(m.in_op_ball(60));
        assert!(!m.c().is_zero());
        n += 1;
    }
    assert_eq!(n, spec.count());
}
