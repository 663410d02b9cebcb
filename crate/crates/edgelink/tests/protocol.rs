//! Link-level behavior over real loopback sockets plus codec and
//! trust-on-first-use properties.

use std::io::{Cursor, Read, Write};
use std::net::{TcpListener, TcpStream};

use proptest::prelude::*;
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use sightline_edgelink::{
    client_handshake, encode, read_message, server_handshake, write_message, EdgelinkError,
    FrameEncoding, HandshakeOffer, ImageEnvelope, Message, PinStore,
};

fn offer(fingerprint: [u8; 32]) -> HandshakeOffer {
    HandshakeOffer {
        edge_address: "edge.local:7411".into(),
        server_fingerprint: fingerprint,
        image_directory: "/var/frames".into(),
        username: "edge".into(),
        protocol_version: 1,
    }
}

fn random_envelope(rng: &mut ChaCha8Rng, sequence: u64) -> ImageEnvelope {
    let (width, height) = (rng.gen_range(1..=24u32), rng.gen_range(1..=24u32));
    let encoding = if rng.gen_bool(0.5) { FrameEncoding::Gray8 } else { FrameEncoding::Rgb8 };
    let len = width as usize * height as usize * encoding.bytes_per_pixel();
    let payload: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
    ImageEnvelope::new(sequence, rng.gen_range(0..1_000_000), width, height, encoding, payload).unwrap()
}

/// In-memory one-directional pair: reads come from `input`, writes land in
/// `output`. Enough to drive one handshake end without a peer thread.
struct ScriptedStream {
    input: Cursor<Vec<u8>>,
    output: Vec<u8>,
}

impl ScriptedStream {
    fn new(input: Vec<u8>) -> Self {
        ScriptedStream {
            input: Cursor::new(input),
            output: Vec::new(),
        }
    }
}

impl Read for ScriptedStream {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        self.input.read(buf)
    }
}

impl Write for ScriptedStream {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.output.extend_from_slice(buf);
        Ok(buf.len())
    }
    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

#[test]
fn tofu_pin_then_match_then_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let pin_path = dir.path().join("pins.json");

    // first contact: unknown address pins the fingerprint and opens
    let mut pins = PinStore::open(&pin_path).unwrap();
    let stream = ScriptedStream::new(encode(&Message::Offer(offer([5u8; 32]))));
    let session = client_handshake(stream, &mut pins).unwrap();
    assert_eq!(session.offer.edge_address, "edge.local:7411");
    assert!(pins.hosts().get("edge.local:7411").is_some());

    // repeat contact with the same fingerprint opens
    let stream = ScriptedStream::new(encode(&Message::Offer(offer([5u8; 32]))));
    assert!(client_handshake(stream, &mut pins).is_ok());

    // altered fingerprint is rejected hard, and the channel got a REJECT
    let stream = ScriptedStream::new(encode(&Message::Offer(offer([6u8; 32]))));
    match client_handshake(stream, &mut pins) {
        Err(EdgelinkError::FingerprintMismatch { address }) => {
            assert_eq!(address, "edge.local:7411");
        }
        Err(other) => panic!("unexpected error {other:?}"),
        Ok(_) => panic!("mismatched fingerprint opened a session"),
    }
    // the pin is unchanged after the mismatch
    assert_eq!(pins.hosts().get("edge.local:7411"), Some(&[5u8; 32]));
}

#[test]
fn malformed_offer_is_a_protocol_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut pins = PinStore::open(dir.path().join("pins.json")).unwrap();
    // an ACK where the OFFER belongs
    let stream = ScriptedStream::new(encode(&Message::Ack { sequence: 1 }));
    assert!(matches!(
        client_handshake(stream, &mut pins),
        Err(EdgelinkError::UnexpectedMessage { expected: "OFFER", .. })
    ));
}

fn loopback_pair() -> (TcpStream, TcpStream) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let client = TcpStream::connect(addr).unwrap();
    let (server, _) = listener.accept().unwrap();
    (client, server)
}

#[test]
fn frames_round_trip_byte_identical_over_loopback() {
    let (client, server) = loopback_pair();
    let dir = tempfile::tempdir().unwrap();

    let server_thread = std::thread::spawn(move || {
        let mut session = server_handshake(server, offer([1u8; 32])).unwrap();
        let mut received = Vec::new();
        for _ in 0..200 {
            received.push(session.receive_frame().unwrap());
        }
        received
    });

    let mut pins = PinStore::open(dir.path().join("pins.json")).unwrap();
    let mut session = client_handshake(client, &mut pins).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sent = Vec::new();
    for seq in 1..=200u64 {
        let envelope = random_envelope(&mut rng, seq);
        session.send_frame(&envelope).unwrap();
        sent.push(envelope);
    }

    let received = server_thread.join().unwrap();
    assert_eq!(sent, received);
}

#[test]
fn corrupted_payload_bit_gets_a_nak_and_session_survives() {
    let (mut client, server) = loopback_pair();
    let dir = tempfile::tempdir().unwrap();

    let server_thread = std::thread::spawn(move || {
        let mut session = server_handshake(server, offer([1u8; 32])).unwrap();
        // first frame arrives corrupted
        let first = session.receive_frame();
        assert!(matches!(first, Err(EdgelinkError::FrameCorrupt { sequence: 1 })));
        // link still works for the retransmission
        session.receive_frame().unwrap()
    });

    // manual client so we can corrupt bytes on the wire
    let _ = dir; // pin policy exercised elsewhere; this test is about frames
    let offer_msg = read_message(&mut client).unwrap();
    assert!(matches!(offer_msg, Message::Offer(_)));
    write_message(&mut client, &Message::Accept).unwrap();

    let envelope = ImageEnvelope::new(1, 42, 4, 4, FrameEncoding::Gray8, vec![9; 16]).unwrap();
    let mut bytes = encode(&Message::Frame(envelope.clone()));
    let payload_start = bytes.len() - 16 - 4; // payload sits before the trailing crc
    bytes[payload_start] ^= 0x01;
    client.write_all(&bytes).unwrap();
    client.flush().unwrap();
    match read_message(&mut client).unwrap() {
        Message::Nak { sequence } => assert_eq!(sequence, 1),
        other => panic!("expected NAK, got {other:?}"),
    }

    // retransmit clean with the same sequence: allowed because nothing was
    // accepted yet
    write_message(&mut client, &Message::Frame(envelope.clone())).unwrap();
    match read_message(&mut client).unwrap() {
        Message::Ack { sequence } => assert_eq!(sequence, 1),
        other => panic!("expected ACK, got {other:?}"),
    }

    let received = server_thread.join().unwrap();
    assert_eq!(received, envelope);
}

#[test]
fn sequence_regression_is_a_protocol_error() {
    let (client, server) = loopback_pair();
    let dir = tempfile::tempdir().unwrap();

    let server_thread = std::thread::spawn(move || {
        let mut session = server_handshake(server, offer([1u8; 32])).unwrap();
        session.receive_frame().unwrap();
        session.receive_frame()
    });

    let mut pins = PinStore::open(dir.path().join("pins.json")).unwrap();
    let mut session = client_handshake(client, &mut pins).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    session.send_frame(&random_envelope(&mut rng, 7)).unwrap();

    // the sender refuses regressions locally
    let stale = random_envelope(&mut rng, 5);
    assert!(matches!(
        session.send_frame(&stale),
        Err(EdgelinkError::SequenceRegression { got: 5, last: 7 })
    ));

    // push one past the sender guard to prove the receiver checks too
    write_message(session.stream_mut(), &Message::Frame(stale)).unwrap();
    match server_thread.join().unwrap() {
        Err(EdgelinkError::SequenceRegression { got: 5, last: 7 }) => {}
        other => panic!("unexpected {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn codec_round_trip(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sequence: u64 = rng.gen();
        let envelope = random_envelope(&mut rng, sequence);
        let encoded = encode(&Message::Frame(envelope.clone()));
        let mut reader = Cursor::new(encoded.clone());
        let decoded = read_message(&mut reader).unwrap();
        prop_assert_eq!(decoded, Message::Frame(envelope));
        // re-encoding is byte-identical
        if let Message::Frame(e) = read_message(&mut Cursor::new(encoded.clone())).unwrap() {
            prop_assert_eq!(encode(&Message::Frame(e)), encoded);
        }
    }

    #[test]
    fn offer_codec_round_trip(
        address in "[a-z0-9.:]{1,40}",
        directory in "[a-z0-9/_]{0,60}",
        username in "[a-z]{1,16}",
        version in 1u16..=u16::MAX,
        fp in prop::array::uniform32(any::<u8>()),
    ) {
        let offer = HandshakeOffer {
            edge_address: address,
            server_fingerprint: fp,
            image_directory: directory,
            username,
            protocol_version: version,
        };
        let encoded = encode(&Message::Offer(offer.clone()));
        let decoded = read_message(&mut Cursor::new(encoded)).unwrap();
        prop_assert_eq!(decoded, Message::Offer(offer));
    }

    /// Model check: once an address is pinned, no session ever opens with a
    /// different fingerprint, whatever the handshake sequence.
    #[test]
    fn tofu_safety_over_random_handshake_sequences(
        attempts in prop::collection::vec((0u8..3, 0u8..4), 1..24),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let mut pins = PinStore::open(dir.path().join("pins.json")).unwrap();
        let mut model: std::collections::BTreeMap<String, u8> = Default::default();

        for (addr_idx, fp_byte) in attempts {
            let address = format!("edge-{addr_idx}:7411");
            let mut o = offer([fp_byte; 32]);
            o.edge_address = address.clone();
            let stream = ScriptedStream::new(encode(&Message::Offer(o)));
            let result = client_handshake(stream, &mut pins);
            match model.get(&address) {
                None => {
                    prop_assert!(result.is_ok(), "first contact must open");
                    model.insert(address, fp_byte);
                }
                Some(&pinned) if pinned == fp_byte => prop_assert!(result.is_ok()),
                Some(_) => prop_assert!(
                    matches!(result, Err(EdgelinkError::FingerprintMismatch { .. })),
                    "pinned address accepted a different fingerprint"
                ),
            }
        }
    }
}
