//! Decoder must never panic, and accepted forms must survive an
//! encode/decode round trip unchanged. The block decomposition is
//! recomputed on decode, so this also exercises the splitting code.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(form) = ephi::json::decode_form(text) else {
        return;
    };
    let encoded = ephi::json::to_json(&ephi::json::form_to_doc(&form), false)
        .expect("accepted forms re-encode");
    let again = ephi::json::decode_form(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, form);
});
