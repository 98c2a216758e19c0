//! Decoder must never panic, and accepted words must survive an
//! encode/decode round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(word) = ephi::json::decode_word(text) else {
        return;
    };
    let encoded = ephi::json::to_json(&ephi::json::word_to_doc(&word), false)
        .expect("accepted words re-encode");
    let again = ephi::json::decode_word(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, word);
});
