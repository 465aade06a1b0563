#include <occ/error.hpp>
#include <occ/io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace occ {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Io: return "Io";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::NonNumeric: return "NonNumeric";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::TargetClassNotFound: return "TargetClassNotFound";
    case ErrorKind::NonPsdCovariance: return "NonPsdCovariance";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InfeasibleC: return "InfeasibleC";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::IdMismatch: return "IdMismatch";
    case ErrorKind::EmptyEvaluation: return "EmptyEvaluation";
    case ErrorKind::EmptyValidationClass: return "EmptyValidationClass";
    case ErrorKind::AllConfigsFailed: return "AllConfigsFailed";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::Format: return "Format";
    }
    return "Unknown";
}

namespace io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw Error(ErrorKind::Io, "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot rename onto " + path.string());
    }
}

std::string format_double(double value) {
    char buf[32];
    int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char ch : value) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

std::string fingerprint(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace io
} // namespace occ
