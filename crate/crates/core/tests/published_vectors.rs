mod common;

use sosemanuk::kat::PUBLISHED_VECTORS;
use sosemanuk::{Error, Sosemanuk};

fn decode(v: &(&str, &str, &str)) -> (Vec<u8>, [u8; 16], Vec<u8>) {
    let iv: [u8; 16] = hex::decode(v.1).unwrap().try_into().unwrap();
    (hex::decode(v.0).unwrap(), iv, hex::decode(v.2).unwrap())
}

#[test]
fn library_matches_published_vectors() {
    for v in PUBLISHED_VECTORS {
        let (key, iv, want) = decode(v);
        let mut c = Sosemanuk::with_key_iv(&key, &iv).unwrap();
        assert_eq!(hex::encode(c.keystream(want.len())), hex::encode(&want), "key {}", v.0);
    }
}

#[test]
fn library_matches_published_vectors_byte_by_byte() {
    for v in PUBLISHED_VECTORS {
        let (key, iv, want) = decode(v);
        let mut c = Sosemanuk::with_key_iv(&key, &iv).unwrap();
        let got: Vec<u8> = (0..want.len()).flat_map(|_| c.keystream(1)).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn oracle_matches_published_vectors() {
    for v in PUBLISHED_VECTORS {
        let (key, iv, want) = decode(v);
        assert_eq!(common::naive_keystream(&key, &iv, want.len()), want, "key {}", v.0);
    }
}

#[test]
fn short_key_reference_vector() {
    let key = hex::decode("a7c083feb7").unwrap();
    let iv: [u8; 16] = hex::decode("00112233445566778899aabbccddeeff").unwrap().try_into().unwrap();
    let want = hex::decode(
        "fe81d2162c9a100d04895c454a77515bbe6a431a935cb90e2221ebb7ef502328\
         943539492eff6310c871054c2889cc728f82e86b1afff4334b6127a13a155c75\
         151630bd482eb673ff5db477fa6c53ebe1a4ec38c23c5400c315455d93a2aced\
         9598604727fa340d5f2a8bd757b77833f74bd2bc049313c80616b4a06268ae35\
         0db92eec4fa56c171374a67a80c006d0ead048ce7b640f17d3d5a62d1f251c21",
    )
    .unwrap();
    assert_eq!(common::naive_keystream(&key, &iv, 160), want);
    // 40-bit keys are below the supported floor.
    assert_eq!(
        Sosemanuk::with_key_iv(&key, &iv).err(),
        Some(Error::InvalidKey { len: 5 })
    );
}

#[test]
fn self_check_passes() {
    assert!(sosemanuk::kat::self_check());
}
