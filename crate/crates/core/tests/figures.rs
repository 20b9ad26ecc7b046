use griddesigns::arith::{big_binom, exact_div, factorial};
use griddesigns::criteria::{check_d, check_dhat, classify_case, CaseLabel};
use griddesigns::figures::Figure;
use griddesigns::oracle::{self, Budget};
use griddesigns::permgroup::{automorphisms, tau_equivalent, GroupKind};
use num_bigint::BigUint;
use sha2::{Digest, Sha256};

const CHECKSUMS: [(Figure, &str); 3] = [
    (Figure::Fig1, "20d6743c0fc84c22556c14b7f86c594d6518c6d9a803cf07f7ade66d2ad7806d"),
    (Figure::Fig2, "3a1ea5b8b1fb24a1a6d09437c2054c29d8b634a83f98605cec1bd32d2c0a3cea"),
    (Figure::Fig3, "555bd8ecffcf501ddbade80240c8640423a72c277f6755132be641cb7ef1682a"),
];

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `b C(k,t) / C(v,t)` with `b = |group| / |stabiliser|`: the counting route to lambda.
fn counting_lambda(group_order: BigUint, stabiliser: &BigUint, v: u64, k: u64, t: u64) -> BigUint {
    let b = exact_div(&group_order, stabiliser).unwrap();
    exact_div(&(b * big_binom(k, t)), &big_binom(v, t)).unwrap()
}

#[test]
fn bundled_data_is_unchanged() {
    for (fig, expected) in CHECKSUMS {
        let digest = hex::encode(Sha256::digest(fig.source().as_bytes()));
        assert_eq!(digest, expected, "{fig} data file changed");
    }
}

#[test]
fn fig2_degrees_and_design() {
    let g = Figure::Fig2.graph();
    let (mut x, y) = g.degrees();
    x.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(x, vec![2, 1, 1, 1, 1, 0, 0, 0]);
    assert_eq!(y, vec![4, 2]);
    assert_eq!(g.complement().edge_count(), 10);
    let aut = automorphisms(&g);
    assert_eq!(aut.k_order, big(36));
    let d = check_d(&g, &aut).unwrap();
    assert!(d.is_3design);
    assert_eq!(d.lambda_3, Some(big(80)));
    assert_eq!(d.lambda_3.unwrap(), counting_lambda(factorial(8) * factorial(2), &aut.k_order, 16, 6, 3));
}

#[test]
fn fig2_oracle() {
    let g = Figure::Fig2.graph();
    let d = oracle::materialize(&g, GroupKind::K, &Budget::default()).unwrap();
    assert_eq!(d.b(), 2240);
    let hist = oracle::lambda_table(&d, 3, &Budget::default()).unwrap();
    assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(80, 560)]);
}

#[test]
fn fig1_counts_and_lambda() {
    let g = Figure::Fig1.graph();
    let s = g.stats();
    assert_eq!(g.edge_count(), 36);
    assert_eq!((s.two_paths(), s.claws(), s.p3), (105, 90, 300));
    let aut = automorphisms(&g);
    assert_eq!(aut.g_order, Some(big(576)));
    assert_eq!(aut.tau_equivalent, Some(false));
    assert!(!tau_equivalent(&g).unwrap());
    let dhat = check_dhat(&g, &aut).unwrap();
    assert!(dhat.is_3design);
    assert_eq!(dhat.lambda_3, Some(big(137_168_640_000)));
    let ten = factorial(10);
    assert_eq!(dhat.lambda_3.clone().unwrap(), &ten * &ten / 96u32);
    assert_eq!(
        dhat.lambda_3.unwrap(),
        counting_lambda(factorial(11).pow(2) * 2u32, aut.g_order.as_ref().unwrap(), 121, 36, 3)
    );
    assert!(!check_d(&g, &aut).unwrap().is_2design);
    let case = classify_case(&g, &aut, 3).unwrap();
    assert_eq!(case.label, CaseLabel::Case3);
    assert_eq!(classify_case(&g, &aut, 2).unwrap().label, CaseLabel::Case3);
}

#[test]
fn fig1_orbit_ratios() {
    let g = Figure::Fig1.graph();
    let r = oracle::orbit_ratio_check(&g, GroupKind::G, 3).unwrap();
    assert!(r.holds);
    let counts: Vec<u64> = r.orbits.iter().map(|o| o.in_block).collect();
    assert_eq!(&counts[..2], &[90, 300]);
    for o in &r.orbits {
        assert_eq!(big(o.in_block) * big_binom(121, 3), &o.size * big_binom(36, 3));
    }
}

#[test]
fn fig3_criteria() {
    let g = Figure::Fig3.graph();
    assert_eq!(g.edge_count(), 105);
    let s = g.stats();
    assert_eq!((s.p2_r, s.p2_c, s.claw3_r, s.claw3_c, s.p3), (140, 140, 120, 120, 740));
    let aut = automorphisms(&g);
    let expected = big(1 << 9) * big(6) * big(24) * big(120 * 120);
    assert_eq!(aut.k_order, expected);
    assert_eq!(aut.tau_equivalent, Some(false));
    let d = check_d(&g, &aut).unwrap();
    let dhat = check_dhat(&g, &aut).unwrap();
    assert!(d.is_3design && dhat.is_3design);
    let lambda = d.lambda_3.clone().unwrap();
    assert_eq!(dhat.lambda_3.unwrap(), &lambda * 2u32);
    assert_eq!(lambda, counting_lambda(factorial(38).pow(2), &aut.k_order, 38 * 38, 105, 3));
    let digits = lambda.to_str_radix(10);
    assert_eq!(digits.len(), 77);
    assert!(digits.starts_with("96"), "{digits}");
}
