// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTOMO_QTOMO_HPP
#define QTOMO_QTOMO_HPP

#include "qtomo/entropy.hpp"
#include "qtomo/error.hpp"
#include "qtomo/fixtures.hpp"
#include "qtomo/indexing.hpp"
#include "qtomo/inequalities.hpp"
#include "qtomo/io.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/report.hpp"
#include "qtomo/sampling.hpp"
#include "qtomo/tomography.hpp"

#endif
