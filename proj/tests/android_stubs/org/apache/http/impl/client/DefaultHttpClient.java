package org.apache.http.impl.client;

import org.apache.http.HttpResponse;
import org.apache.http.client.methods.HttpGet;

public class DefaultHttpClient {
    public HttpResponse execute(HttpGet request) {
        return new HttpResponse();
    }
}
