use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rarebit::{generate_prefix, GeneratorDescriptor, Sequence};
use rarebit_cli::cache::Cache;
use rarebit_cli::seqfile::SequenceFile;
use rarebit_cli::{cmd_generate, cmd_measure, descriptor_from_flags};
use rarebit::measure::MeasureParams;

proptest! {
    #[test]
    fn seqfile_round_trip(alphabet in 2u32..=256, len in 0usize..400, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols: Vec<u8> = (0..len).map(|_| rng.gen_range(0..alphabet) as u8).collect();
        let seq = Sequence::from_symbols(symbols, alphabet).unwrap();
        let file = SequenceFile::new(seq.clone());
        let back = SequenceFile::from_bytes(&file.to_bytes()).unwrap();
        prop_assert_eq!(back.sequence.symbols(), seq.symbols());
        prop_assert_eq!(back.sequence.alphabet(), alphabet);
    }
}

#[test]
fn thue_morse_bytes_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tm.rbsq");
    let g = descriptor_from_flags("tm", None, None, None, None, None).unwrap();
    cmd_generate(&g, 16, &out, None).unwrap();
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(&bytes[bytes.len() - 2..], &[0x96, 0x69]);
}

#[test]
fn squares_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq.rbsq");
    let g = descriptor_from_flags("tm", None, None, None, None, Some("0,0,1")).unwrap();
    cmd_generate(&g, 8, &out, None).unwrap();
    let seq = SequenceFile::read(&out).unwrap().sequence;
    let expected: Vec<u8> = (0u64..8).map(|n| ((n * n).count_ones() % 2) as u8).collect();
    assert_eq!(seq.symbols(), &expected[..]);
    assert_eq!(seq.provenance().unwrap().to_string(), "tm poly=0,0,1");
}

#[test]
fn zero_length_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g = GeneratorDescriptor::thue_morse();
    assert!(cmd_generate(&g, 0, &dir.path().join("x.rbsq"), None).is_err());
}

#[test]
fn general_pattern_flags() {
    let g = descriptor_from_flags("general", None, Some(3), Some(3), Some("12"), None).unwrap();
    assert_eq!(g.alphabet(), 3);
    assert!(descriptor_from_flags("general", None, Some(3), None, Some("12"), None).is_err());
    assert!(descriptor_from_flags("nope", None, None, None, None, None).is_err());
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::at(dir.path().join("cache"));
    let g = GeneratorDescriptor::pattern_k(2).unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    let first = cmd_generate(&g, 1000, &a, Some(&cache)).unwrap();
    let second = cmd_generate(&g, 1000, &b, Some(&cache)).unwrap();
    cmd_generate(&g, 1000, &c, None).unwrap();
    assert!(!first.cache_hit);
    assert!(second.cache_hit);
    assert_eq!(first.sha256, second.sha256);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.rbsq");
    let seq = generate_prefix(&GeneratorDescriptor::thue_morse().along("0,0,1".parse().unwrap()), 4096).unwrap();
    SequenceFile::new(seq).write(&file).unwrap();
    for name in ["moc", "expansion", "corr2", "subword", "blocks"] {
        let params = MeasureParams::default();
        let a = cmd_measure(&file, name, Some(vec![256, 1024, 4096]), &params).unwrap();
        let b = cmd_measure(&file, name, Some(vec![256, 1024, 4096]), &params).unwrap();
        assert_eq!(a.values(), b.values(), "{name}");
        assert!(!a.rows.is_empty());
    }
}

#[test]
fn thue_morse_measures() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.rbsq");
    SequenceFile::new(generate_prefix(&GeneratorDescriptor::thue_morse(), 4096).unwrap()).write(&file).unwrap();
    let params = MeasureParams::default();
    let cps: Vec<usize> = (8..=12).map(|e| 1 << e).collect();
    let moc = cmd_measure(&file, "moc", Some(cps.clone()), &params).unwrap();
    let ms: Vec<usize> = moc.rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(ms.windows(2).all(|w| w[0] <= w[1]), "{ms:?}");
    let e = cmd_measure(&file, "expansion", Some(cps), &params).unwrap();
    for r in &e.rows {
        assert!(r[1].parse::<usize>().unwrap() <= 5, "{r:?}");
    }
    assert!(cmd_measure(&file, "moc", Some(vec![5000]), &params).is_err());
}

#[test]
fn zero_file_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z.rbsq");
    SequenceFile::new(Sequence::binary(vec![0; 64]).unwrap()).write(&file).unwrap();
    let params = MeasureParams::default();
    let moc = cmd_measure(&file, "moc", None, &params).unwrap();
    assert_eq!(moc.rows[0][1], "0");
    let e = cmd_measure(&file, "expansion", None, &params).unwrap();
    assert_eq!(e.rows[0][1], "0");
}
