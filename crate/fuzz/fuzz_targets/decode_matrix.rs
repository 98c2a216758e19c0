//! Decoder must never panic, and accepted matrices must survive an
//! encode/decode round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(matrix) = ephi::json::decode_matrix(text) else {
        return;
    };
    let encoded = ephi::json::to_json(&ephi::json::matrix_to_doc(&matrix), false)
        .expect("accepted matrices re-encode");
    let again = ephi::json::decode_matrix(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, matrix);
});
