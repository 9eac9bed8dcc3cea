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

#include "cjsonish.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#define CJ_MAX_MEMBERS 8
#define CJ_MAX_KEY 31

enum cj_kind { CJ_NULL, CJ_BOOL, CJ_NUMBER, CJ_OBJECT };

struct cj_value {
  enum cj_kind kind;
  double num;
  size_t len;
  char keys[CJ_MAX_MEMBERS][CJ_MAX_KEY + 1];
  struct cj_value *members[CJ_MAX_MEMBERS];
};

static const char *skip_ws(const char *s) {
  while (*s == ' ' || *s == '\t' || *s == '\n' || *s == '\r') s++;
  return s;
}

static cj_value *make_value(enum cj_kind kind) {
  cj_value *v = (cj_value *)calloc(1, sizeof(*v));
  if (v != NULL) v->kind = kind;
  return v;
}

static cj_value *parse_number(const char *s, const char **end) {
  char *stop = NULL;
  double num = strtod(s, &stop);
  if (stop == s) return NULL;
  cj_value *v = make_value(CJ_NUMBER);
  if (v != NULL) v->num = num;
  *end = stop;
  return v;
}

static cj_value *parse_object(const char *s, const char **end) {
  cj_value *obj = make_value(CJ_OBJECT);
  if (obj == NULL) return NULL;
  s = skip_ws(s + 1);
  if (*s == '}') {
    *end = s + 1;
    return obj;
  }
  while (obj->len < CJ_MAX_MEMBERS) {
    s = skip_ws(s);
    if (*s != '"') break;
    s++;
    size_t k = 0;
    while (*s != '\0' && *s != '"' && k < CJ_MAX_KEY) obj->keys[obj->len][k++] = *s++;
    if (*s != '"') break;
    s = skip_ws(s + 1);
    if (*s != ':') break;
    s = skip_ws(s + 1);
    const char *stop = s;
    cj_value *member = parse_number(s, &stop);
    if (member == NULL) break;
    obj->members[obj->len++] = member;
    s = skip_ws(stop);
    if (*s == ',') {
      s++;
      continue;
    }
    if (*s == '}') {
      *end = s + 1;
      return obj;
    }
    break;
  }
  cj_value_free(obj);
  return NULL;
}

cj_value *cj_parse(const char *text) {
  if (text == NULL) return NULL;
  const char *s = skip_ws(text);
  const char *end = s;
  cj_value *v = NULL;
  if (strncmp(s, "null", 4) == 0) {
    v = make_value(CJ_NULL);
    end = s + 4;
  } else if (strncmp(s, "true", 4) == 0) {
    v = make_value(CJ_BOOL);
    if (v != NULL) v->num = 1.0;
    end = s + 4;
  } else if (strncmp(s, "false", 5) == 0) {
    v = make_value(CJ_BOOL);
    end = s + 5;
  } else if (*s == '{') {
    v = parse_object(s, &end);
  } else {
    v = parse_number(s, &end);
  }
  if (v == NULL) return NULL;
  if (*skip_ws(end) != '\0') {
    cj_value_free(v);
    return NULL;
  }
  return v;
}

const char *cj_type_name(const cj_value *v) {
  if (v == NULL) return "null";
  switch (v->kind) {
    case CJ_BOOL:
      return "bool";
    case CJ_NUMBER:
      return "number";
    case CJ_OBJECT:
      return "object";
    default:
      return "null";
  }
}

double cj_number(const cj_value *v) {
  if (v == NULL) return 0.0;
  return v->num;
}

cj_value *cj_get(const cj_value *v, const char *key) {
  if (v == NULL || key == NULL || v->kind != CJ_OBJECT) return NULL;
  for (size_t i = 0; i < v->len; i++) {
    if (strncmp(v->keys[i], key, CJ_MAX_KEY) == 0) return v->members[i];
  }
  return NULL;
}

size_t cj_length(const cj_value *v) {
  if (v == NULL || v->kind != CJ_OBJECT) return 0;
  return v->len;
}

char *cj_print(const cj_value *v) {
  char buf[CJ_MAX_MEMBERS * 48 + 16];
  size_t at = 0;
  if (v == NULL || v->kind == CJ_NULL) {
    snprintf(buf, sizeof buf, "null");
  } else if (v->kind == CJ_BOOL) {
    snprintf(buf, sizeof buf, v->num != 0.0 ? "true" : "false");
  } else if (v->kind == CJ_NUMBER) {
    snprintf(buf, sizeof buf, "%g", v->num);
  } else {
    buf[at++] = '{';
    for (size_t i = 0; i < v->len; i++) {
      at += (size_t)snprintf(buf + at, sizeof buf - at, "%s\"%s\":%g", i > 0 ? "," : "",
                             v->keys[i], v->members[i]->num);
    }
    buf[at++] = '}';
    buf[at] = '\0';
  }
  size_t n = strlen(buf);
  char *out = (char *)malloc(n + 1);
  if (out == NULL) return NULL;
  memcpy(out, buf, n + 1);
  return out;
}

void cj_value_free(cj_value *v) {
  if (v == NULL) return;
  if (v->kind == CJ_OBJECT) {
    for (size_t i = 0; i < v->len; i++) free(v->members[i]);
  }
  free(v);
}
