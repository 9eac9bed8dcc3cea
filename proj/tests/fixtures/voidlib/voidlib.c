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

#include "voidlib.h"

#define VL_CAPACITY 64

static int vl_stack[VL_CAPACITY];
static int vl_top = 0;

void vl_reset(void) { vl_top = 0; }

int vl_counter(void) { return vl_top; }

void vl_push(int value) {
  if (vl_top >= VL_CAPACITY) return;
  vl_stack[vl_top++] = value;
}

int vl_pop(void) {
  if (vl_top == 0) return 0;
  return vl_stack[--vl_top];
}

unsigned vl_mix(unsigned seed) {
  seed ^= seed << 13;
  seed ^= seed >> 17;
  seed ^= seed << 5;
  return seed;
}
