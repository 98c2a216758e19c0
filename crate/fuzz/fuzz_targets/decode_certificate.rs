//! Decoder must never panic, and accepted certificates must survive an
//! encode/decode round trip unchanged. Decoding only validates structure;
//! re-running the checks is the CLI's job, not the parser's.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cert) = ephi::json::decode_certificate(text) else {
        return;
    };
    let encoded =
        ephi::json::encode_certificate(&cert, false).expect("accepted certificates re-encode");
    let again = ephi::json::decode_certificate(&encoded).expect("canonical encoding decodes");
    assert_eq!(again, cert);
});
