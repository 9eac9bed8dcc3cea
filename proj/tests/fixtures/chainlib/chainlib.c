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

#include "chainlib.h"

#include <stdlib.h>
#include <string.h>

struct ch_source {
  unsigned char *data;
  size_t len;
  size_t pos;
};

struct ch_filter {
  ch_source *src;
};

struct ch_sink {
  ch_filter *filter;
  int drained;
};

ch_source *ch_source_open(const unsigned char *data, size_t len) {
  ch_source *src = (ch_source *)calloc(1, sizeof(*src));
  if (src == NULL) return NULL;
  if (data != NULL && len > 0) {
    src->data = (unsigned char *)malloc(len);
    if (src->data == NULL) {
      free(src);
      return NULL;
    }
    memcpy(src->data, data, len);
    src->len = len;
  }
  return src;
}

ch_filter *ch_filter_new(ch_source *src) {
  if (src == NULL) return NULL;
  ch_filter *f = (ch_filter *)calloc(1, sizeof(*f));
  if (f == NULL) return NULL;
  f->src = src;
  return f;
}

ch_sink *ch_sink_new(ch_filter *f) {
  if (f == NULL) return NULL;
  ch_sink *s = (ch_sink *)calloc(1, sizeof(*s));
  if (s == NULL) return NULL;
  s->filter = f;
  return s;
}

int ch_sink_drain(ch_sink *s) {
  if (s == NULL || s->filter == NULL || s->filter->src == NULL) return 0;
  ch_source *src = s->filter->src;
  int n = 0;
  while (src->pos < src->len) {
    unsigned char c = src->data[src->pos++];
    if (c >= 'A' && c <= 'Z') c = (unsigned char)(c - 'A' + 'a');
    s->drained++;
    n++;
  }
  return n;
}

void ch_sink_close(ch_sink *s) { free(s); }

void ch_filter_free(ch_filter *f) { free(f); }

void ch_source_close(ch_source *src) {
  if (src == NULL) return;
  free(src->data);
  free(src);
}
