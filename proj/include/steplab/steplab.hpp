// Copyright 2026 The steplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEPLAB_STEPLAB_HPP
#define STEPLAB_STEPLAB_HPP

#include "steplab/error.hpp"
#include "steplab/prime.hpp"
#include "steplab/ntt.hpp"
#include "steplab/dense_poly.hpp"
#include "steplab/truncations.hpp"
#include "steplab/formal.hpp"
#include "steplab/linalg.hpp"
#include "steplab/stepanov.hpp"
#include "steplab/curves.hpp"
#include "steplab/experiments.hpp"
#include "steplab/serialize.hpp"

#endif  // STEPLAB_STEPLAB_HPP
