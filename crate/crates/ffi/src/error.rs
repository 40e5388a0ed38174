use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status returned by every fallible entry point.
///
/// Codes 2, 3 and 4 mirror the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HexlabStatus {
    Ok = 0,
    Validation = 2,
    Io = 3,
    UndefinedStatistic = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

pub(crate) enum FfiError {
    Core(hexlab::Error),
    Null(&'static str),
    Buffer { needed: usize, capacity: usize },
}

impl From<hexlab::Error> for FfiError {
    fn from(e: hexlab::Error) -> Self {
        FfiError::Core(e)
    }
}

impl FfiError {
    fn status(&self) -> HexlabStatus {
        match self {
            FfiError::Core(hexlab::Error::Validation(_)) => HexlabStatus::Validation,
            FfiError::Core(hexlab::Error::UndefinedStatistic(_)) => {
                HexlabStatus::UndefinedStatistic
            }
            FfiError::Core(hexlab::Error::Io { .. }) => HexlabStatus::Io,
            FfiError::Null(_) => HexlabStatus::NullPointer,
            FfiError::Buffer { .. } => HexlabStatus::BufferTooSmall,
        }
    }

    fn message(&self) -> String {
        match self {
            FfiError::Core(e) => e.to_string(),
            FfiError::Null(arg) => format!("null pointer passed for `{arg}`"),
            FfiError::Buffer { needed, capacity } => {
                format!("output buffer holds {capacity} elements, {needed} required")
            }
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

pub(crate) fn last_error_ptr() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Runs `f`, converting errors and panics into a status and the thread's last error.
pub(crate) fn guard(f: impl FnOnce() -> Result<(), FfiError>) -> HexlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            HexlabStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(e.message());
            e.status()
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            HexlabStatus::Panic
        }
    }
}

pub(crate) fn non_null<T>(p: *const T, name: &'static str) -> Result<(), FfiError> {
    if p.is_null() {
        Err(FfiError::Null(name))
    } else {
        Ok(())
    }
}

/// Borrows `len` elements at `p`; a zero length accepts a null pointer.
///
/// # Safety
/// `p` must point to `len` initialized elements when `len > 0`.
pub(crate) unsafe fn slice<'a, T>(
    p: *const T,
    len: usize,
    name: &'static str,
) -> Result<&'a [T], FfiError> {
    if len == 0 {
        return Ok(&[]);
    }
    non_null(p, name)?;
    Ok(std::slice::from_raw_parts(p, len))
}

/// Copies `values` into the caller's buffer of `capacity` elements.
///
/// # Safety
/// `out` must be writable for `capacity` elements.
pub(crate) unsafe fn fill<T: Copy>(
    values: &[T],
    out: *mut T,
    capacity: usize,
    name: &'static str,
) -> Result<(), FfiError> {
    if capacity < values.len() {
        return Err(FfiError::Buffer {
            needed: values.len(),
            capacity,
        });
    }
    non_null(out, name)?;
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
pub(crate) unsafe fn write<T>(out: *mut T, value: T, name: &'static str) -> Result<(), FfiError> {
    non_null(out, name)?;
    out.write(value);
    Ok(())
}
