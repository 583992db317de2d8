use kcspace::fixtures::{
    exceptional_tables, level_sizes, printed_bound, reproduce, space_for, weighted_bounds,
    ReproduceTarget, TABLE_TOL,
};
use kcspace::{build_m1, build_z, Family};

#[test]
fn g2_m1_matches_golden_exactly() {
    let report = reproduce(ReproduceTarget::G2M1).unwrap();
    assert!(report.is_match(), "{:?}", report.mismatches);
    assert_eq!(report.lines.len(), 5);
}

#[test]
fn g2_z_matches_golden() {
    let report = reproduce(ReproduceTarget::G2Z).unwrap();
    assert!(report.is_match(), "{:?}", report.mismatches);
}

#[test]
fn exceptional_tables_reproduce() {
    for family in Family::EXCEPTIONAL {
        let report = reproduce(ReproduceTarget::Tables(family)).unwrap();
        assert!(report.is_match(), "{family}: {:?}", report.mismatches);
        assert!(!report.lines.is_empty());
    }
}

#[test]
fn weighted_bounds_reproduce() {
    for row in weighted_bounds().unwrap() {
        let space = space_for(row.algebra.parse().unwrap(), row.p).unwrap();
        let mu = space.mu().unwrap();
        let got = printed_bound(&space, row.s, &mu).unwrap();
        assert!(
            (got - row.bound).abs() <= TABLE_TOL,
            "{} α{} s={}: {got}",
            row.algebra,
            row.p,
            row.s
        );
    }
}

#[test]
fn level_cardinalities() {
    for (algebra, p, sizes) in level_sizes().unwrap() {
        let space = space_for(algebra, p).unwrap();
        assert_eq!(space.level_sizes(), sizes, "({algebra}, α{p})");
    }
}

#[test]
fn table_rows_cover_every_exceptional_case() {
    let rows = exceptional_tables().unwrap();
    assert_eq!(rows.len(), 23);
    let e8 = rows.iter().filter(|r| r.algebra == "E8").count();
    assert_eq!(e8, 8);
}

#[test]
fn e8_alpha4_is_the_largest_case() {
    let space = space_for("E8".parse().unwrap(), 4).unwrap();
    assert_eq!(space.dim(), 106);
    assert_eq!(space.k_max(), 6);
    let m1 = build_m1(&space).unwrap();
    assert_eq!(m1.mu(), kcspace::Rational::from_integer(9));
    let z = build_z(&space).unwrap();
    assert_eq!(z.pairs().len(), 106 * 105);
}
