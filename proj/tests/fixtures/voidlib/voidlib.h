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

/* Global-state counter with no pointer-typed signatures anywhere, so
 * no type-compatibility edges exist at all.
 */

#ifndef VOIDLIB_H_
#define VOIDLIB_H_

/** Clears the counter stack. */
void vl_reset(void);

/** Number of values currently pushed. */
int vl_counter(void);

/** Pushes a value; the stack silently drops pushes past its capacity. */
void vl_push(int value);

/** Pops the most recent value; 0 when empty. */
int vl_pop(void);

/** One round of a xorshift mixer. */
unsigned vl_mix(unsigned seed);

#endif /* VOIDLIB_H_ */
