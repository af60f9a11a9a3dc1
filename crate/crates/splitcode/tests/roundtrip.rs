use proptest::prelude::*;
use splitcode::{parse, write, Document};
use splitcode_core::algebra::AbelianGroup;
use splitcode_core::designs::{AmdCode, Block, SourceDistribution, SplittingSystem};
use splitcode_core::Rational;

/// Random splitting system: each block is a random assignment of some
/// points to `m` nonempty parts, in random order.
fn system() -> impl Strategy<Value = SplittingSystem> {
    (2usize..5, 4usize..12).prop_flat_map(|(m, v)| {
        let block = proptest::sample::subsequence((0..v).collect::<Vec<_>>(), m..=v)
            .prop_shuffle()
            .prop_flat_map(move |pts| {
                let n = pts.len();
                proptest::collection::vec(0..m, n).prop_map(move |labels| {
                    let mut parts = vec![Vec::new(); m];
                    // first m points seed each part so none is empty
                    for (i, &x) in pts.iter().enumerate() {
                        parts[if i < m { i } else { labels[i] }].push(x);
                    }
                    Block::new(parts)
                })
            });
        proptest::collection::vec(block, 1..8)
            .prop_map(move |blocks| SplittingSystem::new(v, m, blocks).unwrap())
    })
}

fn amd() -> impl Strategy<Value = AmdCode> {
    prop_oneof![Just(vec![12u64]), Just(vec![2, 6]), Just(vec![3, 2, 2])].prop_flat_map(|orders| {
        let g = AbelianGroup::new(orders).unwrap();
        let n = g.order() as usize;
        (
            Just(g),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n).prop_shuffle(),
            2usize..4,
        )
            .prop_map(|(g, pts, m)| {
                let m = m.min(pts.len());
                let mut enc = vec![Vec::new(); m];
                for (i, &x) in pts.iter().enumerate() {
                    enc[i % m].push(x);
                }
                AmdCode::new(g, enc).unwrap()
            })
    })
}

fn distribution() -> impl Strategy<Value = SourceDistribution> {
    proptest::collection::vec(0i128..20, 1..6).prop_filter_map("nonzero", |w| {
        let total: i128 = w.iter().sum();
        (total > 0).then(|| {
            SourceDistribution::new(w.iter().map(|&x| Rational::new(x, total)).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn systems_round_trip(s in system()) {
        let doc = Document::SplittingSystem(s);
        prop_assert_eq!(parse(&write(&doc)).unwrap(), doc);
    }

    #[test]
    fn amd_codes_round_trip(a in amd()) {
        let doc = Document::AmdCode(a);
        prop_assert_eq!(parse(&write(&doc)).unwrap(), doc);
    }

    #[test]
    fn distributions_round_trip(d in distribution()) {
        let doc = Document::SourceDistribution(d);
        prop_assert_eq!(parse(&write(&doc)).unwrap(), doc);
    }
}
