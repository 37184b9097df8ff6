#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lodtex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Malformed XML; carries the byte offset reported by the XML reader.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : Error(what + " (at byte " + std::to_string(byte_offset) + ")"), offset_(byte_offset) {}
    std::size_t byte_offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Coordinate data that cannot form geometry; names the offending gml:id.
class GeometryError : public Error {
public:
    GeometryError(const std::string& what, std::string gml_id)
        : Error(what + " [" + gml_id + "]"), id_(std::move(gml_id)) {}
    const std::string& gml_id() const noexcept { return id_; }

private:
    std::string id_;
};

class MissingSurfaceError : public Error {
public:
    using Error::Error;
};

class OutOfDomainError : public Error {
public:
    using Error::Error;
};

class CrsError : public Error {
public:
    using Error::Error;
};

class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

class NonPlanarFacadeError : public Error {
public:
    using Error::Error;
};

class NoVisibleFacadeError : public Error {
public:
    using Error::Error;
};

class FullyOccludedError : public Error {
public:
    using Error::Error;
};

class InsufficientEvidenceError : public Error {
public:
    using Error::Error;
};

class SingularAttitudeError : public Error {
public:
    using Error::Error;
};

class EmptyMaskError : public Error {
public:
    using Error::Error;
};

class ManifestError : public Error {
public:
    ManifestError(const std::string& what, std::ptrdiff_t entry)
        : Error("manifest entry " + std::to_string(entry) + ": " + what), entry_(entry) {}
    /// Index of the offending mask entry; -1 for manifest-level problems.
    std::ptrdiff_t entry() const noexcept { return entry_; }

private:
    std::ptrdiff_t entry_;
};

class InsufficientMatchesError : public Error {
public:
    using Error::Error;
};

class NoModelError : public Error {
public:
    using Error::Error;
};

class DegenerateViewError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& what, std::string path)
        : Error(what + ": " + path), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace lodtex
