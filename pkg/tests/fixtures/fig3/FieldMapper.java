package org.elasticsearch.index.mapper;

public abstract class FieldMapper extends Mapper {

    protected abstract String contentType();
}
