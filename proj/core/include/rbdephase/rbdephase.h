// Copyright 2026 The rbdephase Authors
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

#ifndef RBDEPHASE_RBDEPHASE_H
#define RBDEPHASE_RBDEPHASE_H

#include "rbdephase/decay.h"
#include "rbdephase/errors.h"
#include "rbdephase/fit.h"
#include "rbdephase/group_kind.h"
#include "rbdephase/groups.h"
#include "rbdephase/io.h"
#include "rbdephase/oracle.h"
#include "rbdephase/rng.h"
#include "rbdephase/spectra.h"
#include "rbdephase/transfer.h"

#endif  // RBDEPHASE_RBDEPHASE_H
