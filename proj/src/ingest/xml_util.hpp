// Copyright 2026 The TestQuest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TESTQUEST_SRC_INGEST_XML_UTIL_HPP_
#define TESTQUEST_SRC_INGEST_XML_UTIL_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "testquest/error.hpp"

namespace testquest::ingest::xml {

inline boost::property_tree::ptree parse(std::string_view document) {
  boost::property_tree::ptree tree;
  std::istringstream stream{std::string(document)};
  try {
    boost::property_tree::read_xml(stream, tree);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw Error(Errc::kMalformedDocument,
                "line " + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

inline std::string attribute(const boost::property_tree::ptree& node,
                             const std::string& name) {
  return node.get<std::string>("<xmlattr>." + name, "");
}

// Absent attribute yields nullopt; a present but non-numeric one is an error.
inline std::optional<std::uint64_t> optional_count(
    const boost::property_tree::ptree& node, const std::string& name) {
  const auto text = node.get_optional<std::string>("<xmlattr>." + name);
  if (!text) return std::nullopt;
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text->data(), text->data() + text->size(), value);
  if (ec != std::errc() || ptr != text->data() + text->size() ||
      text->empty()) {
    throw Error(Errc::kMalformedDocument,
                "attribute " + name + " is not a count: '" + *text + "'");
  }
  return value;
}

}  // namespace testquest::ingest::xml

#endif  // TESTQUEST_SRC_INGEST_XML_UTIL_HPP_
