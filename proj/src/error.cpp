#include "igac/error.hpp"

namespace igac {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::shape: return "shape";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::accuracy: return "accuracy";
        case ErrorKind::singularity: return "singularity";
        case ErrorKind::inversion: return "inversion";
        case ErrorKind::insufficient_data: return "insufficient_data";
        case ErrorKind::inapplicable: return "inapplicable";
        case ErrorKind::fit: return "fit";
        case ErrorKind::validation: return "validation";
        case ErrorKind::resource: return "resource";
    }
    return "unknown";
}

}  // namespace igac
