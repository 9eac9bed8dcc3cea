// Copyright 2026 The masfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASFUZZ_JSON_IO_HPP_
#define MASFUZZ_JSON_IO_HPP_

#include <string>
#include <vector>

#include "masfuzz/coverage.hpp"
#include "masfuzz/crash.hpp"
#include "masfuzz/driver.hpp"
#include "masfuzz/model.hpp"

namespace masfuzz {

/// Whole-file reads and writes that raise IoError with the path on
/// failure. write_text_file creates parent directories.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

/// Every artifact carries a "schema" tag; loaders reject mismatches
/// with FormatError. Serialization is key-ordered, so identical state
/// produces byte-identical artifacts.

// model.json (masfuzz.model/1). Function bodies are not persisted; the
// metainfo needed downstream (spans, types, docs) is.
std::string serialize_model(const LibraryModel &model);
LibraryModel deserialize_model(const std::string &text);

// sequences.json (masfuzz.sequences/1): the mined pool plus the
// semantic oracle's output.
std::string serialize_sequences(const SequencePool &pool,
                                const std::vector<SemanticDescription> &descriptions,
                                const std::vector<SemanticRelation> &relations);
void deserialize_sequences(const std::string &text, SequencePool *pool,
                           std::vector<SemanticDescription> *descriptions,
                           std::vector<SemanticRelation> *relations);

// drivers/index.json (masfuzz.drivers/1): driver metadata; sources live
// next to it as .c files.
std::string serialize_drivers(const std::vector<FuzzDriver> &drivers);
std::vector<FuzzDriver> deserialize_drivers(const std::string &text);

// coverage/ledger.json (masfuzz.coverage/1): ledger state plus the
// executed-sequence history.
std::string serialize_coverage(const CoverageLedger &ledger, const SequenceHistory &history);
void deserialize_coverage(const std::string &text, CoverageLedger *ledger,
                          SequenceHistory *history);

// crashes/<key>/triage.json (masfuzz.triage/1).
std::string serialize_triage(const CrashRecord &record);
CrashRecord deserialize_triage(const std::string &text);

}  // namespace masfuzz

#endif  // MASFUZZ_JSON_IO_HPP_
