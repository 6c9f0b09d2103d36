/**
 * Copyright 2026 The tilekit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace tilekit {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed invalid parameters or inconsistent inputs. The CLI maps
/// these to exit code 2 (usage error).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// File system or codec failure. The CLI maps these to exit code 1.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tilekit
