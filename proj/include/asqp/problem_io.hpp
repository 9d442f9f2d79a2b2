#pragma once

#include <filesystem>
#include <string>

#include "asqp/model.hpp"

namespace asqp {

/// Problem documents are JSON objects with lowercase fields
///   n, Q (n rows of n numbers), q, A, b, G, h and optional x0.
/// A/b and G/h may be empty arrays. Parse failures throw
/// Error(MalformedProblemFile) naming the first offending field.
QpProblem parse_problem(const std::string& text);
QpProblem read_problem(const std::filesystem::path& path);

std::string format_problem(const QpProblem& problem);
void write_problem(const std::filesystem::path& path, const QpProblem& problem);

}  // namespace asqp
