//! The `.fset` file format, streaming writes, k-way merge and external sort.
//!
//! Layout (all multi-byte integers little-endian):
//!
//! ```text
//! offset 0  magic   "BFSET\0"
//! offset 6  version 1
//! offset 7  n
//! offset 8  flags   bit 0 sorted, bit 1 has-signatures
//! offset 9  count   u64
//! offset 17 records
//! ```
//!
//! A record is the truth table packed MSB-first (`f_0` is bit 7 of byte 0) in
//! `ceil(2^n / 8)` bytes, so byte order equals function order. With signatures each
//! record is followed by a tag byte (0 = z, 1 = o, 2 = vector) and, for vectors,
//! `ceil(n / 8)` bytes of the direction bits in the same convention.

use std::borrow::Borrow;
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::boolfn::{record_len, BoolFn, BoolFnError, Directions, Signature, MAX_VARS};

pub const MAGIC: &[u8; 6] = b"BFSET\0";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 17;
pub const FLAG_SORTED: u8 = 1;
pub const FLAG_SIGNATURES: u8 = 2;

/// Default in-memory budget for external sort runs.
pub const DEFAULT_SORT_BUDGET: usize = 1 << 30;
/// Most runs merged at once by [`ExternalSorter`].
pub const MAX_FAN_IN: usize = 64;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("not an fset file (bad magic)")]
    BadMagic,
    #[error("unsupported fset version {0}")]
    BadVersion(u8),
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("records out of order at record {index}")]
    OrderViolation { index: u64 },
    #[error("inputs have different variable counts ({0} and {1})")]
    MixedN(usize, usize),
    #[error("record has {actual} variables, file has {expected}")]
    WrongArity { expected: usize, actual: usize },
    #[error("signature tag {0} is invalid")]
    BadTag(u8),
    #[error("file ended after {read} of {count} records")]
    Truncated { read: u64, count: u64 },
    #[error(transparent)]
    Function(#[from] BoolFnError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FsetHeader {
    pub n: usize,
    pub sorted: bool,
    pub signatures: bool,
    pub count: u64,
}

impl FsetHeader {
    fn flags(&self) -> u8 {
        (self.sorted as u8 * FLAG_SORTED) | (self.signatures as u8 * FLAG_SIGNATURES)
    }

    fn encode(&self) -> [u8; HEADER_LEN] {
        let mut h = [0u8; HEADER_LEN];
        h[..6].copy_from_slice(MAGIC);
        h[6] = VERSION;
        h[7] = self.n as u8;
        h[8] = self.flags();
        h[9..].copy_from_slice(&self.count.to_le_bytes());
        h
    }

    fn decode(h: &[u8; HEADER_LEN]) -> Result<Self, StoreError> {
        if &h[..6] != MAGIC {
            return Err(StoreError::BadMagic);
        }
        if h[6] != VERSION {
            return Err(StoreError::BadVersion(h[6]));
        }
        let n = h[7] as usize;
        if n > MAX_VARS {
            return Err(StoreError::BadHeader(format!("n = {n}")));
        }
        if h[8] & !(FLAG_SORTED | FLAG_SIGNATURES) != 0 {
            return Err(StoreError::BadHeader(format!("flags {:#04x}", h[8])));
        }
        Ok(Self {
            n,
            sorted: h[8] & FLAG_SORTED != 0,
            signatures: h[8] & FLAG_SIGNATURES != 0,
            count: u64::from_le_bytes(h[9..].try_into().unwrap()),
        })
    }
}

/// A function with its optional stored signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsetRecord {
    pub function: BoolFn,
    pub sig: Option<Signature>,
}

fn signature_len(n: usize) -> usize {
    n.div_ceil(8)
}

fn encode_signature(n: usize, sig: &Signature, out: &mut Vec<u8>) {
    match sig {
        Signature::Zero => out.push(0),
        Signature::One => out.push(1),
        Signature::Vec(d) => {
            out.push(2);
            let len = signature_len(n);
            let bits = (d.bits() as u64) << (8 * len - n);
            out.extend_from_slice(&bits.to_be_bytes()[8 - len..]);
        }
    }
}

/// Streaming writer. The record count is patched into the header by [`finish`].
///
/// [`finish`]: FsetWriter::finish
pub struct FsetWriter<W: Write + Seek> {
    sink: W,
    header: FsetHeader,
    last: Option<Vec<u8>>,
    buf: Vec<u8>,
}

impl<W: Write + Seek> FsetWriter<W> {
    pub fn new(mut sink: W, n: usize, sorted: bool, signatures: bool) -> Result<Self, StoreError> {
        if n > MAX_VARS {
            return Err(StoreError::BadHeader(format!("n = {n}")));
        }
        let header = FsetHeader { n, sorted, signatures, count: 0 };
        sink.write_all(&header.encode())?;
        Ok(Self { sink, header, last: None, buf: Vec::new() })
    }

    pub fn header(&self) -> FsetHeader {
        self.header
    }

    pub fn push(&mut self, f: &BoolFn) -> Result<(), StoreError> {
        self.push_record(f, None)
    }

    pub fn push_signed(&mut self, f: &BoolFn, sig: &Signature) -> Result<(), StoreError> {
        self.push_record(f, Some(sig))
    }

    fn push_record(&mut self, f: &BoolFn, sig: Option<&Signature>) -> Result<(), StoreError> {
        if f.n() != self.header.n {
            return Err(StoreError::WrongArity { expected: self.header.n, actual: f.n() });
        }
        let bytes = f.to_record_bytes();
        self.push_raw(&bytes, sig)
    }

    fn push_raw(&mut self, bytes: &[u8], sig: Option<&Signature>) -> Result<(), StoreError> {
        if self.header.sorted {
            if let Some(last) = &self.last {
                if last.as_slice() >= bytes {
                    return Err(StoreError::OrderViolation { index: self.header.count });
                }
            }
            self.last = Some(bytes.to_vec());
        }
        self.buf.clear();
        self.buf.extend_from_slice(bytes);
        if self.header.signatures {
            let sig = sig.ok_or_else(|| StoreError::BadHeader("missing signature".into()))?;
            encode_signature(self.header.n, sig, &mut self.buf);
        }
        self.sink.write_all(&self.buf)?;
        self.header.count += 1;
        Ok(())
    }

    fn push_raw_record(&mut self, rec: &RawRecord) -> Result<(), StoreError> {
        if self.header.sorted {
            if let Some(last) = &self.last {
                if last.as_slice() >= rec.key() {
                    return Err(StoreError::OrderViolation { index: self.header.count });
                }
            }
            self.last = Some(rec.key().to_vec());
        }
        let data = if self.header.signatures { &rec.bytes[..] } else { rec.key() };
        self.sink.write_all(data)?;
        self.header.count += 1;
        Ok(())
    }

    /// Patches the record count and returns the sink.
    pub fn finish(mut self) -> Result<(W, FsetHeader), StoreError> {
        let end = self.sink.stream_position()?;
        self.sink.seek(SeekFrom::Start(9))?;
        self.sink.write_all(&self.header.count.to_le_bytes())?;
        self.sink.seek(SeekFrom::Start(end))?;
        self.sink.flush()?;
        Ok((self.sink, self.header))
    }
}

/// Writes a whole stream of functions.
pub fn write_stream<W, I>(sink: W, n: usize, sorted: bool, functions: I) -> Result<FsetHeader, StoreError>
where
    W: Write + Seek,
    I: IntoIterator,
    I::Item: std::borrow::Borrow<BoolFn>,
{
    let mut w = FsetWriter::new(sink, n, sorted, false)?;
    for f in functions {
        w.push(f.borrow())?;
    }
    Ok(w.finish()?.1)
}

/// Writes functions with signatures.
pub fn write_signed<W, I>(sink: W, n: usize, sorted: bool, items: I) -> Result<FsetHeader, StoreError>
where
    W: Write + Seek,
    I: IntoIterator<Item = (BoolFn, Signature)>,
{
    let mut w = FsetWriter::new(sink, n, sorted, true)?;
    for (f, s) in items {
        w.push_signed(&f, &s)?;
    }
    Ok(w.finish()?.1)
}

pub fn create_file(
    path: &Path,
    n: usize,
    sorted: bool,
    signatures: bool,
) -> Result<FsetWriter<BufWriter<File>>, StoreError> {
    FsetWriter::new(BufWriter::new(File::create(path)?), n, sorted, signatures)
}

/// A record as raw bytes: the packed table followed by any signature trailer.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RawRecord {
    bytes: Vec<u8>,
    key_len: usize,
}

impl RawRecord {
    fn key(&self) -> &[u8] {
        &self.bytes[..self.key_len]
    }
}

/// Sequential reader over the records of an `.fset` stream.
pub struct FsetReader<R: Read> {
    src: R,
    header: FsetHeader,
    read: u64,
    key_len: usize,
}

impl<R: Read> FsetReader<R> {
    pub fn new(mut src: R) -> Result<Self, StoreError> {
        let mut h = [0u8; HEADER_LEN];
        src.read_exact(&mut h)?;
        let header = FsetHeader::decode(&h)?;
        Ok(Self { src, header, read: 0, key_len: record_len(header.n) })
    }

    pub fn header(&self) -> FsetHeader {
        self.header
    }

    fn next_raw(&mut self) -> Result<Option<RawRecord>, StoreError> {
        if self.read == self.header.count {
            return Ok(None);
        }
        let truncated = |e: io::Error, read, count| {
            if e.kind() == io::ErrorKind::UnexpectedEof {
                StoreError::Truncated { read, count }
            } else {
                StoreError::Io(e)
            }
        };
        let mut bytes = vec![0u8; self.key_len];
        self.src.read_exact(&mut bytes).map_err(|e| truncated(e, self.read, self.header.count))?;
        if self.header.signatures {
            let mut tag = [0u8; 1];
            self.src.read_exact(&mut tag).map_err(|e| truncated(e, self.read, self.header.count))?;
            bytes.push(tag[0]);
            match tag[0] {
                0 | 1 => {}
                2 => {
                    let mut alpha = vec![0u8; signature_len(self.header.n)];
                    self.src.read_exact(&mut alpha).map_err(|e| truncated(e, self.read, self.header.count))?;
                    bytes.extend_from_slice(&alpha);
                }
                t => return Err(StoreError::BadTag(t)),
            }
        }
        self.read += 1;
        Ok(Some(RawRecord { bytes, key_len: self.key_len }))
    }

    fn decode(&self, raw: &RawRecord) -> Result<FsetRecord, StoreError> {
        let n = self.header.n;
        let function = BoolFn::from_record_bytes(n, raw.key())?;
        let sig = if self.header.signatures {
            Some(match raw.bytes[self.key_len] {
                0 => Signature::Zero,
                1 => Signature::One,
                _ => {
                    let alpha = &raw.bytes[self.key_len + 1..];
                    let mut buf = [0u8; 8];
                    buf[8 - alpha.len()..].copy_from_slice(alpha);
                    let bits = u64::from_be_bytes(buf) >> (8 * alpha.len() - n);
                    Signature::Vec(Directions::new(n, bits as u32))
                }
            })
        } else {
            None
        };
        Ok(FsetRecord { function, sig })
    }

    pub fn next_record(&mut self) -> Result<Option<FsetRecord>, StoreError> {
        match self.next_raw()? {
            Some(raw) => self.decode(&raw).map(Some),
            None => Ok(None),
        }
    }
}

impl<R: Read> Iterator for FsetReader<R> {
    type Item = Result<FsetRecord, StoreError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_record().transpose()
    }
}

pub fn open_file(path: &Path) -> Result<FsetReader<BufReader<File>>, StoreError> {
    FsetReader::new(BufReader::new(File::open(path)?))
}

/// Reads every record of a stream.
pub fn read_all<R: Read>(src: R) -> Result<(FsetHeader, Vec<FsetRecord>), StoreError> {
    let mut r = FsetReader::new(src)?;
    let header = r.header();
    let records = r.by_ref().collect::<Result<Vec<_>, _>>()?;
    Ok((header, records))
}

/// Reads the functions of a stream, dropping signatures.
pub fn read_functions<R: Read>(src: R) -> Result<(FsetHeader, Vec<BoolFn>), StoreError> {
    let (h, recs) = read_all(src)?;
    Ok((h, recs.into_iter().map(|r| r.function).collect()))
}

struct HeapItem {
    rec: RawRecord,
    source: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rec.key().cmp(other.rec.key()).then(self.source.cmp(&other.source))
    }
}

/// K-way merge of sorted readers, passing each distinct table to `emit` in order
/// (the first input wins on duplicates).
fn merge_readers<R: Read>(
    mut inputs: Vec<FsetReader<R>>,
    mut emit: impl FnMut(&RawRecord) -> Result<(), StoreError>,
) -> Result<u64, StoreError> {
    let mut heap = BinaryHeap::new();
    let mut last_per_input: Vec<Option<Vec<u8>>> = vec![None; inputs.len()];
    for (i, r) in inputs.iter_mut().enumerate() {
        if let Some(rec) = r.next_raw()? {
            heap.push(Reverse(HeapItem { rec, source: i }));
        }
    }
    let mut last: Option<Vec<u8>> = None;
    let mut written = 0u64;
    while let Some(Reverse(item)) = heap.pop() {
        let src = item.source;
        if let Some(prev) = &last_per_input[src] {
            if prev.as_slice() >= item.rec.key() {
                return Err(StoreError::OrderViolation { index: inputs[src].read - 1 });
            }
        }
        last_per_input[src] = Some(item.rec.key().to_vec());
        if last.as_deref() != Some(item.rec.key()) {
            emit(&item.rec)?;
            written += 1;
            last = Some(item.rec.key().to_vec());
        }
        if let Some(rec) = inputs[src].next_raw()? {
            heap.push(Reverse(HeapItem { rec, source: src }));
        }
    }
    Ok(written)
}

/// Sorted union of sorted `.fset` files, duplicates removed.
pub fn merge_sorted(inputs: &[PathBuf], output: &Path) -> Result<FsetHeader, StoreError> {
    let readers = inputs.iter().map(|p| open_file(p)).collect::<Result<Vec<_>, _>>()?;
    merge_into(readers, BufWriter::new(File::create(output)?)).map(|(_, h)| h)
}

/// Merges sorted readers into a sink; all inputs must share `n`.
pub fn merge_into<R: Read, W: Write + Seek>(
    readers: Vec<FsetReader<R>>,
    sink: W,
) -> Result<(W, FsetHeader), StoreError> {
    let n = readers.first().map(|r| r.header.n).unwrap_or(0);
    for r in &readers {
        if r.header.n != n {
            return Err(StoreError::MixedN(n, r.header.n));
        }
        if !r.header.sorted {
            return Err(StoreError::BadHeader("merge input is not flagged sorted".into()));
        }
    }
    let signatures = !readers.is_empty() && readers.iter().all(|r| r.header.signatures);
    let mut out = FsetWriter::new(sink, n, true, signatures)?;
    merge_readers(readers, |rec| out.push_raw_record(rec))?;
    out.finish()
}

/// Scratch directory for sort runs: `BFCENSUS_TMPDIR` if set, else the system default.
pub fn scratch_dir() -> PathBuf {
    std::env::var_os("BFCENSUS_TMPDIR").map(PathBuf::from).unwrap_or_else(std::env::temp_dir)
}

/// Accumulates records, spilling sorted deduplicated runs to disk once the budget is
/// exceeded, and merges the runs at the end.
pub struct ExternalSorter {
    dir: tempfile::TempDir,
    budget: usize,
    buffer: Vec<RawRecord>,
    buffered_bytes: usize,
    runs: Vec<PathBuf>,
    n: Option<usize>,
    signatures: bool,
}

impl ExternalSorter {
    pub fn new(scratch: &Path, budget_bytes: usize) -> Result<Self, StoreError> {
        std::fs::create_dir_all(scratch)?;
        Ok(Self {
            dir: tempfile::Builder::new().prefix("bfcensus-sort").tempdir_in(scratch)?,
            budget: budget_bytes.max(1),
            buffer: Vec::new(),
            buffered_bytes: 0,
            runs: Vec::new(),
            n: None,
            signatures: false,
        })
    }

    pub fn push(&mut self, f: &BoolFn) -> Result<(), StoreError> {
        let bytes = f.to_record_bytes();
        self.push_raw(f.n(), RawRecord { key_len: bytes.len(), bytes })
    }

    fn push_raw(&mut self, n: usize, rec: RawRecord) -> Result<(), StoreError> {
        match self.n {
            None => self.n = Some(n),
            Some(m) if m != n => return Err(StoreError::MixedN(m, n)),
            _ => {}
        }
        self.buffered_bytes += rec.bytes.len() + std::mem::size_of::<RawRecord>();
        self.buffer.push(rec);
        if self.buffered_bytes >= self.budget {
            self.spill()?;
        }
        Ok(())
    }

    fn sort_buffer(&mut self) {
        // stable, so the first occurrence of a table keeps its trailer
        self.buffer.sort_by(|a, b| a.key().cmp(b.key()));
        self.buffer.dedup_by(|a, b| a.key() == b.key());
    }

    fn spill(&mut self) -> Result<(), StoreError> {
        if self.buffer.is_empty() {
            return Ok(());
        }
        self.sort_buffer();
        let path = self.dir.path().join(format!("run-{:06}.fset", self.runs.len()));
        let mut w = create_file(&path, self.n.unwrap_or(0), true, self.signatures)?;
        for rec in self.buffer.drain(..) {
            w.push_raw_record(&rec)?;
        }
        w.finish()?;
        self.buffered_bytes = 0;
        self.runs.push(path);
        Ok(())
    }

    /// Merges everything pushed so far, calling `visit` on each distinct function in
    /// increasing order. Returns the number of distinct functions.
    pub fn finish(
        mut self,
        n: usize,
        mut visit: impl FnMut(&BoolFn) -> Result<(), StoreError>,
    ) -> Result<u64, StoreError> {
        let n = self.n.unwrap_or(n);
        self.drain(|rec| visit(&BoolFn::from_record_bytes(n, rec.key())?))
    }

    fn drain(&mut self, mut emit: impl FnMut(&RawRecord) -> Result<(), StoreError>) -> Result<u64, StoreError> {
        if self.runs.is_empty() {
            self.sort_buffer();
            for rec in &self.buffer {
                emit(rec)?;
            }
            return Ok(self.buffer.len() as u64);
        }
        self.spill()?;
        // bounded fan-in keeps the number of open files small
        while self.runs.len() > MAX_FAN_IN {
            let runs = std::mem::take(&mut self.runs);
            for (i, group) in runs.chunks(MAX_FAN_IN).enumerate() {
                let path = self.dir.path().join(format!("pass-{:06}-{i:06}.fset", runs.len()));
                let readers = group.iter().map(|p| open_file(p)).collect::<Result<Vec<_>, _>>()?;
                let mut w = create_file(&path, self.n.unwrap_or(0), true, self.signatures)?;
                merge_readers(readers, |rec| w.push_raw_record(rec))?;
                w.finish()?;
                for p in group {
                    std::fs::remove_file(p)?;
                }
                self.runs.push(path);
            }
        }
        let readers = self.runs.iter().map(|p| open_file(p)).collect::<Result<Vec<_>, _>>()?;
        merge_readers(readers, emit)
    }
}

/// Sorts and deduplicates an `.fset` file of any size into `output`.
pub fn external_sort(
    input: &Path,
    output: &Path,
    scratch: &Path,
    budget_bytes: usize,
) -> Result<FsetHeader, StoreError> {
    let mut reader = open_file(input)?;
    let header = reader.header();
    let mut sorter = ExternalSorter::new(scratch, budget_bytes)?;
    sorter.signatures = header.signatures;
    sorter.n = Some(header.n);
    while let Some(rec) = reader.next_raw()? {
        sorter.push_raw(header.n, rec)?;
    }
    let mut out = create_file(output, header.n, true, header.signatures)?;
    sorter.drain(|rec| out.push_raw_record(rec))?;
    Ok(out.finish()?.1)
}
