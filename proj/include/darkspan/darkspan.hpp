// Copyright 2026 The darkspan Authors
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

#pragma once

#include "darkspan/cluster.hpp"
#include "darkspan/config.hpp"
#include "darkspan/corpus.hpp"
#include "darkspan/embed.hpp"
#include "darkspan/ingest.hpp"
#include "darkspan/lifecycle.hpp"
#include "darkspan/pipeline.hpp"
#include "darkspan/reduce.hpp"
#include "darkspan/simulate.hpp"
#include "darkspan/textnorm.hpp"
#include "darkspan/timeline.hpp"
#include "darkspan/topics.hpp"
