use qclearn::amplify::amplified_learn;
use qclearn::analysis::{battleship_spectrum, conjecture_report, majority_spectrum, s_average};
use qclearn::concepts::{build_family, FamilySpec};
use qclearn::measurement::impatient_transform;

#[test]
fn f32_matches_f64() {
    let s32 = s_average(&battleship_spectrum::<f32>(64, 7).unwrap());
    let s64 = s_average(&battleship_spectrum::<f64>(64, 7).unwrap());
    assert!((s32 as f64 - s64).abs() < 1e-5);
    let m32 = s_average(&majority_spectrum::<f32>(12).unwrap());
    let m64 = s_average(&majority_spectrum::<f64>(12).unwrap());
    assert!((m32 as f64 - m64).abs() < 1e-5);
}

#[test]
fn f32_pipeline() {
    for spec in [FamilySpec::Grover { size: 64 }, FamilySpec::Battleship { size: 11, r: 2 }, FamilySpec::Bv { n: 4 }] {
        let fam = build_family(&spec).unwrap();
        let single = impatient_transform::<f32>(&fam).unwrap();
        let double = impatient_transform::<f64>(&fam).unwrap();
        assert!((single.avg_success as f64 - double.avg_success).abs() < 1e-4, "{}", fam.tag());
        let r32 = amplified_learn::<f32>(&fam, 3).unwrap();
        let r64 = amplified_learn::<f64>(&fam, 3).unwrap();
        assert_eq!((r32.m, r32.membership_queries), (r64.m, r64.membership_queries));
        assert!((r32.simulated_success as f64 - r64.simulated_success).abs() < 1e-4);
    }
    let row = conjecture_report::<f32>(&build_family(&FamilySpec::Grover { size: 1024 }).unwrap()).unwrap();
    assert_eq!(row.membership_queries, 17);
}
