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

#include "miniplist.h"

#include <stdlib.h>
#include <string.h>

struct mini_plist {
  char *title;
  unsigned char *entries;
  size_t count;
};

static char *dup_title(const char *text) {
  size_t n = strlen(text);
  char *out = (char *)malloc(n + 1);
  if (out == NULL) return NULL;
  memcpy(out, text, n + 1);
  return out;
}

mini_plist *mini_parse(const unsigned char *data, size_t len) {
  if (data == NULL || len < 4) return NULL;
  if (data[0] != 'M' || data[1] != 'P' || data[2] != 'L' || data[3] != 'X') return NULL;
  mini_plist *p = (mini_plist *)calloc(1, sizeof(*p));
  if (p == NULL) return NULL;
  p->title = dup_title("plist");
  p->count = len - 4;
  if (p->count > 0) {
    p->entries = (unsigned char *)malloc(p->count);
    if (p->entries == NULL) {
      mini_free(p);
      return NULL;
    }
    memcpy(p->entries, data + 4, p->count);
  }
  return p;
}

mini_plist *mini_copy(const mini_plist *src) {
  if (src == NULL) return NULL;
  mini_plist *dst = (mini_plist *)calloc(1, sizeof(*dst));
  if (dst == NULL) return NULL;
  if (src->count > 0) {
    dst->count = src->count;
    dst->entries = (unsigned char *)malloc(dst->count);
    if (dst->entries == NULL) {
      free(dst);
      return NULL;
    }
    memcpy(dst->entries, src->entries, dst->count);
    /* Planted defect: this early return skips the title copy, so the
     * duplicate of any non-empty list carries a NULL title.
     */
    return dst;
  }
  dst->title = dup_title(src->title);
  return dst;
}

char *mini_to_text(const mini_plist *p) {
  if (p == NULL) return NULL;
  size_t title_len = 0;
  while (p->title[title_len] != '\0') title_len++;
  char *out = (char *)malloc(title_len + 2 * p->count + 2);
  if (out == NULL) return NULL;
  size_t at = 0;
  for (size_t i = 0; i < title_len; i++) out[at++] = p->title[i];
  out[at++] = ':';
  for (size_t i = 0; i < p->count; i++) {
    out[at++] = "0123456789abcdef"[p->entries[i] >> 4];
    out[at++] = "0123456789abcdef"[p->entries[i] & 0xF];
  }
  out[at] = '\0';
  return out;
}

unsigned mini_entry_count(const mini_plist *p) {
  if (p == NULL) return 0;
  return (unsigned)p->count;
}

void mini_free(mini_plist *p) {
  if (p == NULL) return;
  free(p->title);
  free(p->entries);
  free(p);
}
