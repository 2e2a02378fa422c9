// Copyright 2026 The OMEN Authors.
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

#include "error.h"

namespace omen {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kTraining: return "training";
    case ErrorCode::kScoring: return "scoring";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kCalibration: return "calibration";
    case ErrorCode::kComparison: return "comparison";
    case ErrorCode::kFit: return "fit";
  }
  return "unknown";
}

}  // namespace omen
