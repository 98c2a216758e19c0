//! The element grammar parser must never panic, and anything it accepts
//! must render back to text that reparses to the same value. The first
//! input byte picks the ambient ring so every ring kind gets coverage.

#![no_main]

use libfuzzer_sys::fuzz_target;

use ephi::parse::parse_element;
use ephi::ring::RingDescriptor;

fn ring_for(selector: u8) -> RingDescriptor {
    let z = RingDescriptor::integers();
    match selector % 7 {
        0 => z,
        1 => RingDescriptor::rationals(),
        2 => RingDescriptor::integers_mod(7u32.into()).expect("7 > 1"),
        3 => RingDescriptor::integers_mod(45u32.into()).expect("45 > 1"),
        4 => RingDescriptor::polynomial(z, vec!["x".into(), "y".into()]).expect("fresh names"),
        5 => {
            let two = parse_element("2", &z).expect("integer literal");
            RingDescriptor::localized(two).expect("2 is nonzero")
        }
        _ => {
            let three = parse_element("3", &z).expect("integer literal");
            let local = RingDescriptor::localized(three).expect("3 is nonzero");
            RingDescriptor::polynomial(local, vec!["T".into()]).expect("fresh name")
        }
    }
}

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let ring = ring_for(selector);
    let Ok(element) = parse_element(text, &ring) else {
        return;
    };
    let rendered = element.render();
    let again = parse_element(&rendered, &ring).expect("rendered text reparses");
    assert_eq!(again, element);
});
