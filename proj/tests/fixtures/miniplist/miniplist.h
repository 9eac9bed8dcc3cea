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

/* Tiny property-list container used as a fuzzing fixture. The copy
 * routine carries a planted defect reachable only through the
 * parse -> copy -> render chain.
 */

#ifndef MINIPLIST_H_
#define MINIPLIST_H_

#include <stddef.h>

typedef struct mini_plist mini_plist;

/** Parses an "MPLX" container; e.g. "MPLXab" holds the two entries a
 *  and b. Returns NULL when the bytes are not a plist.
 */
mini_plist *mini_parse(const unsigned char *data, size_t len);

/** Deep-copies a plist; copying NULL yields NULL. */
mini_plist *mini_copy(const mini_plist *src);

/** Renders a plist as a heap-allocated text line owned by the caller.
 *  Rendering NULL yields NULL.
 */
char *mini_to_text(const mini_plist *p);

/** Number of entries; 0 for NULL. */
unsigned mini_entry_count(const mini_plist *p);

/** Releases a plist and its entries; NULL is a no-op. */
void mini_free(mini_plist *p);

#endif /* MINIPLIST_H_ */
