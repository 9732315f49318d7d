#include "orchard/error.hpp"

namespace orchard {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownToken: return "UnknownToken";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::UnbalancedBrackets: return "UnbalancedBrackets";
    case Errc::MissingDelimiter: return "MissingDelimiter";
    case Errc::EmptyOperandList: return "EmptyOperandList";
    case Errc::CopyArity: return "CopyArity";
    case Errc::CopyInFirstTree: return "CopyInFirstTree";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnexpectedToken: return "UnexpectedToken";
    case Errc::MissingTable: return "MissingTable";
    case Errc::InvalidDepth: return "InvalidDepth";
    case Errc::MissingRefCount: return "MissingRefCount";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::LineCountMismatch: return "LineCountMismatch";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::UnreadableFile: return "UnreadableFile";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace orchard
