/* Copyright 2026 The hhorder Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
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

namespace hhorder {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, JSON, expressions).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Total mass of a functional differs from 1.
class MassError : public Error {
public:
  using Error::Error;
};

/// A node lies outside [0,1].
class DomainError : public Error {
public:
  using Error::Error;
};

class NegativeWeight : public Error {
public:
  using Error::Error;
};

class UnsupportedTestFunction : public Error {
public:
  using Error::Error;
};

/// The two CDFs coincide almost everywhere; no crossing structure exists.
class DegenerateDifference : public Error {
public:
  using Error::Error;
};

/// Barycenters differ, so the crossing lemma does not apply.
class MeansDiffer : public Error {
public:
  using Error::Error;
};

/// The cumulative and crossing-count decision paths returned different
/// outcomes. Always a bug.
class InternalDisagreement : public Error {
public:
  using Error::Error;
};

/// Parameters violate a closed-form checker's hypotheses.
class InvalidParameters : public Error {
public:
  using Error::Error;
};

/// Holds/fails pattern along a sweep changes more than once.
class NonMonotoneRegion : public Error {
public:
  using Error::Error;
};

} // namespace hhorder
