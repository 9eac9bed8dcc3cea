/* Copyright 2026 The masfuzz Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Scalar helpers only; every return type is primitive, so the type
 * compatibility graph over this library is empty.
 */

#ifndef MINIMATH_H_
#define MINIMATH_H_

#include <stddef.h>

/** Sum of two doubles. */
double mm_add(double a, double b);

/** Multiplies a value by a factor. */
double mm_scale(double v, double factor);

/** Clamps v into [lo, hi]; callers pass lo <= hi. */
int mm_clamp(int v, int lo, int hi);

/** FNV-style hash of a byte buffer; empty input hashes to the offset
 *  basis.
 */
unsigned mm_hash(const unsigned char *data, size_t len);

/** Arithmetic mean; 0.0 for an empty array. */
double mm_mean(const double *values, size_t count);

/** Greatest common divisor of the absolute values; gcd(0, 0) is 0. */
long mm_gcd(long a, long b);

/** -1, 0, or 1 by the sign of v. */
int mm_sign(double v);

/** Linear interpolation between a and b at parameter t. */
double mm_lerp(double a, double b, double t);

#endif /* MINIMATH_H_ */
